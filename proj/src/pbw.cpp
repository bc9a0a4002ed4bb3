#include "dalg/pbw.hpp"

#include <stdexcept>
#include <tuple>

namespace dalg {

std::size_t inversions(const Word& w) {
    std::size_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] < w[j]) ++v;
    return v;
}

WordPoly rewrite_at(const Word& w, std::size_t k, const Presentation& p) {
    int a = w[k], b = w[k + 1];
    if (a >= b) throw std::invalid_argument("rewrite_at: pair is not increasing");
    const Scalar& lead = p.g(a, b);
    WordPoly out;
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    add_term(out, swapped, p.g(b, a) / lead);
    Word keep_a = w, keep_b = w;
    keep_a.erase(keep_a.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    keep_b.erase(keep_b.begin() + static_cast<std::ptrdiff_t>(k));
    add_term(out, keep_a, p.x(b) / lead);
    add_term(out, keep_b, -p.x(a) / lead);
    return out;
}

namespace {

using Key = std::tuple<std::size_t, std::size_t, Word>;

Key key_of(const Word& w) { return {w.size(), inversions(w), w}; }

std::optional<std::size_t> find_pair(const Word& w, Strategy s) {
    if (w.size() < 2) return std::nullopt;
    if (s == Strategy::leftmost) {
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (w[k] < w[k + 1]) return k;
    } else {
        for (std::size_t k = w.size() - 1; k-- > 0;)
            if (w[k] < w[k + 1]) return k;
    }
    return std::nullopt;
}

Monomial monomial_of(const Word& w, int n) {
    Monomial m(n);
    for (int a : w) ++m[a];
    return m;
}

}  // namespace

Poly normal_form(const WordPoly& input, const Presentation& p, Strategy s, RewriteStats* stats) {
    struct Entry {
        Scalar coef;
        std::size_t depth;
    };
    std::map<Key, Entry> work;
    auto push = [&](const Word& w, const Scalar& c, std::size_t depth) {
        if (c.is_zero()) return;
        auto [it, fresh] = work.emplace(key_of(w), Entry{c, depth});
        if (!fresh) {
            it->second.coef += c;
            it->second.depth = std::max(it->second.depth, depth);
        }
    };
    for (const auto& [w, c] : input) {
        for (int a : w)
            if (a < 1 || a > p.n()) throw std::invalid_argument("word letter out of range");
        push(w, c, 0);
    }

    Poly out(p.n());
    RewriteStats local;
    while (!work.empty()) {
        auto node = work.extract(std::prev(work.end()));
        const Key& key = node.key();
        const Entry& e = node.mapped();
        if (e.coef.is_zero()) continue;
        const Word& w = std::get<2>(key);
        auto k = find_pair(w, s);
        if (!k) {
            out.add(monomial_of(w, p.n()), e.coef);
            local.depth = std::max(local.depth, e.depth);
            continue;
        }
        ++local.steps;
        for (const auto& [nw, nc] : rewrite_at(w, *k, p)) {
            if (!(key_of(nw) < key)) local.measure_decreasing = false;
            push(nw, e.coef * nc, e.depth + 1);
        }
    }
    if (stats) *stats = local;
    return out;
}

Poly normal_form(const Word& w, const Presentation& p, Strategy s, RewriteStats* stats) {
    WordPoly wp;
    add_term(wp, w, Scalar(1));
    return normal_form(wp, p, s, stats);
}

TripleCheck diamond_check_triple(const Presentation& p, int a, int b, int c) {
    if (!(1 <= a && a < b && b < c && c <= p.n())) throw std::invalid_argument("diamond_check_triple: need 1 <= a < b < c <= n");
    Word w{a, b, c};
    TripleCheck r;
    r.nf_left = normal_form(rewrite_at(w, 0, p), p);
    r.nf_right = normal_form(rewrite_at(w, 1, p), p);
    r.confluent = r.nf_left == r.nf_right;
    return r;
}

PbwReport is_pbw(const Presentation& p) {
    PbwReport r;
    for (int a = 1; a <= p.n(); ++a)
        for (int b = a + 1; b <= p.n(); ++b)
            for (int c = b + 1; c <= p.n(); ++c)
                if (!diamond_check_triple(p, a, b, c).confluent) {
                    r.pbw = false;
                    r.first_failure = std::array<int, 3>{a, b, c};
                    return r;
                }
    return r;
}

Algebra::Algebra(Presentation p) : p_(std::move(p)) {}

Poly Algebra::times_generator(const Monomial& m, int a) const {
    int b = m.lowest();
    if (b == 0 || a <= b) {
        Monomial r = m;
        ++r[a];
        return Poly::monomial(r);
    }
    auto key = std::pair{m, a};
    {
        std::lock_guard lk(mu_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    // m = m' D_b with b < a:  D_b D_a = q D_a D_b + (x_a/g) D_b - (x_b/g) D_a
    Monomial rest = m;
    --rest[b];
    const Scalar& lead = p_.g(b, a);
    Poly head = times_generator(rest, a);
    Poly out = times_generator(head, b) * (p_.g(a, b) / lead);
    out += Poly::monomial(m, p_.x(a) / lead);
    out += head * (-p_.x(b) / lead);

    std::lock_guard lk(mu_);
    cache_.emplace(key, out);
    return out;
}

Poly Algebra::times_generator(const Poly& p, int a) const {
    Poly out(n());
    for (const auto& [m, c] : p.terms()) out += times_generator(m, a) * c;
    return out;
}

Poly Algebra::multiply(const Poly& a, const Poly& b) const {
    Poly out(n());
    for (const auto& [m, c] : b.terms()) {
        Poly acc = a;
        for (int letter : m.word()) acc = times_generator(acc, letter);
        out += acc * c;
    }
    return out;
}

Poly Algebra::evaluate(const Word& w) const {
    Poly acc = Poly::constant(n(), Scalar(1));
    for (int letter : w) {
        if (letter < 1 || letter > n()) throw std::invalid_argument("word letter out of range");
        acc = times_generator(acc, letter);
    }
    return acc;
}

Poly Algebra::evaluate(const WordPoly& w) const {
    Poly out(n());
    for (const auto& [word, c] : w) out += evaluate(word) * c;
    return out;
}

Poly Algebra::power(const Poly& p, int k) const {
    Poly acc = Poly::constant(n(), Scalar(1));
    for (int i = 0; i < k; ++i) acc = multiply(acc, p);
    return acc;
}

Poly multiply(const Poly& a, const Poly& b, const Presentation& p) { return Algebra(p).multiply(a, b); }

}  // namespace dalg
