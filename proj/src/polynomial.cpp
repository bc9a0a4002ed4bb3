#include "dalg/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dalg {

void add_term(WordPoly& p, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Monomial Monomial::generator(int n, int a) {
    Monomial m(n);
    m[a] = 1;
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (int k : exps) d += k;
    return d;
}

int Monomial::lowest() const {
    for (int a = 1; a <= n(); ++a)
        if ((*this)[a] > 0) return a;
    return 0;
}

Word Monomial::word() const {
    Word w;
    for (int a = n(); a >= 1; --a)
        for (int k = 0; k < (*this)[a]; ++k) w.push_back(a);
    return w;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t k = a.exps.size(); k-- > 0;)
        if (auto c = a.exps[k] <=> b.exps[k]; c != 0) return c;
    return std::strong_ordering::equal;
}

Poly Poly::constant(int n, const Scalar& c) {
    Poly p(n);
    p.add(Monomial(n), c);
    return p;
}

Poly Poly::generator(int n, int a) {
    Poly p(n);
    p.add(Monomial::generator(n, a), Scalar(1));
    return p;
}

Poly Poly::monomial(const Monomial& m, const Scalar& c) {
    Poly p(m.n());
    p.add(m, c);
    return p;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

Scalar Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::constant_term() const { return coefficient(Monomial(n_)); }

void Poly::add(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

WordPoly to_words(const Poly& p) {
    WordPoly w;
    for (const auto& [m, c] : p.terms()) add_term(w, m.word(), c);
    return w;
}

namespace {

struct Lexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("expression column " + std::to_string(pos + 1) + ": " + msg);
    }
    std::string digits() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return std::string(s.substr(start, pos - start));
    }
    Scalar rational() {
        std::string t = digits();
        if (peek() == '/') {
            ++pos;
            t += "/" + digits();
        }
        return Scalar::parse(t);
    }
};

}  // namespace

WordPoly parse_expression(std::string_view text, int n) {
    Lexer lx{text};
    WordPoly out;
    if (lx.at_end()) lx.fail("empty expression");
    bool first = true;
    while (!lx.at_end()) {
        Scalar sign(1);
        char c = lx.peek();
        if (c == '+' || c == '-') {
            if (c == '-') sign = Scalar(-1);
            ++lx.pos;
        } else if (!first) {
            lx.fail("expected '+' or '-'");
        }
        first = false;

        Scalar coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coef = lx.rational();
            have_coef = true;
            if (lx.peek() == '*') ++lx.pos;
            else if (lx.peek() == 'D') lx.fail("expected '*' between coefficient and factors");
        }
        Word w;
        while (lx.peek() == 'D') {
            ++lx.pos;
            std::string idx = lx.digits();
            if (idx.size() > 6) lx.fail("generator index too large");
            int a = std::stoi(idx);
            if (a < 1 || a > n) lx.fail("generator D" + idx + " out of range");
            int e = 1;
            if (lx.peek() == '^') {
                ++lx.pos;
                std::string ex = lx.digits();
                if (ex.size() > 4) lx.fail("exponent too large");
                e = std::stoi(ex);
            }
            for (int k = 0; k < e; ++k) w.push_back(a);
        }
        if (w.empty() && !have_coef) lx.fail("expected a term");
        add_term(out, w, sign * coef);
    }
    return out;
}

std::string render_word(const Word& w) {
    std::ostringstream os;
    for (std::size_t k = 0; k < w.size();) {
        std::size_t e = k;
        while (e < w.size() && w[e] == w[k]) ++e;
        if (k) os << ' ';
        os << 'D' << w[k];
        if (e - k > 1) os << '^' << (e - k);
        k = e;
    }
    return os.str();
}

namespace {

template <class It>
std::string render_terms(It begin, It end) {
    std::ostringstream os;
    bool first = true;
    for (auto it = begin; it != end; ++it) {
        const Word& w = it->first;
        const Scalar& c = it->second;
        Scalar mag = c.sign() < 0 ? -c : c;
        if (first) os << (c.sign() < 0 ? "-" : "");
        else os << (c.sign() < 0 ? " - " : " + ");
        first = false;
        if (w.empty()) os << mag;
        else if (mag.is_one()) os << render_word(w);
        else os << mag << " * " << render_word(w);
    }
    return first ? "0" : os.str();
}

}  // namespace

std::string render(const Poly& p) {
    std::vector<std::pair<Word, Scalar>> ts;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) ts.emplace_back(it->first.word(), it->second);
    return render_terms(ts.begin(), ts.end());
}

std::string render(const WordPoly& p) { return render_terms(p.begin(), p.end()); }

}  // namespace dalg
