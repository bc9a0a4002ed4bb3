#include "dalg/calculus.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dalg {

// ---- affine maps ------------------------------------------------------------

bool AffineMap::invertible() const {
    return std::none_of(img_.begin(), img_.end(), [](const AffineImage& im) { return im.lambda.is_zero(); });
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    AffineMap r(outer.n());
    for (int j = 1; j <= outer.n(); ++j) {
        r[j].lambda = inner[j].lambda * outer[j].lambda;
        r[j].mu = inner[j].lambda * outer[j].mu + inner[j].mu;
    }
    return r;
}

AffineMap inverse(const AffineMap& f) {
    AffineMap r(f.n());
    for (int j = 1; j <= f.n(); ++j) {
        if (f[j].lambda.is_zero()) throw std::domain_error("singular affine map at D" + std::to_string(j));
        r[j].lambda = f[j].lambda.inverse();
        r[j].mu = -f[j].mu / f[j].lambda;
    }
    return r;
}

namespace {

Poly image_of(const AffineMap& f, int j) {
    int n = f.n();
    Poly p = Poly::generator(n, j) * f[j].lambda;
    p += Poly::constant(n, f[j].mu);
    return p;
}

}  // namespace

Poly apply_affine(const AffineMap& f, const Poly& p, const Algebra& A) {
    int n = A.n();
    std::map<std::pair<int, int>, Poly> powers;
    std::function<const Poly&(int, int)> power = [&](int j, int k) -> const Poly& {
        auto key = std::pair{j, k};
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        Poly v = k == 0 ? Poly::constant(n, Scalar(1)) : A.multiply(power(j, k - 1), image_of(f, j));
        return powers.emplace(key, std::move(v)).first->second;
    };
    Poly out(n);
    for (const auto& [m, c] : p.terms()) {
        Poly acc = Poly::constant(n, c);
        for (int a = n; a >= 1; --a)
            if (m[a] > 0) acc = A.multiply(acc, power(a, m[a]));
        out += acc;
    }
    return out;
}

Poly apply_affine(const AffineMap& f, const WordPoly& w, const Algebra& A) {
    int n = A.n();
    Poly out(n);
    for (const auto& [word, c] : w) {
        Poly acc = Poly::constant(n, c);
        for (int letter : word) acc = A.multiply(acc, image_of(f, letter));
        out += acc;
    }
    return out;
}

AutomorphismFamily::AutomorphismFamily(int n) : maps_(static_cast<std::size_t>(n), AffineMap(n)) {}

std::string render_family(const AutomorphismFamily& nu) {
    std::ostringstream os;
    for (int a = 1; a <= nu.n(); ++a)
        for (int j = 1; j <= nu.n(); ++j) os << "nu_" << a << "(D" << j << ") = " << render(image_of(nu.nu(a), j)) << '\n';
    return os.str();
}

std::string to_string(TheoremCase c) {
    switch (c) {
        case TheoremCase::i: return "i";
        case TheoremCase::ii: return "ii";
        case TheoremCase::iii: return "iii";
        case TheoremCase::iv: return "iv";
    }
    return "?";
}

Poly apply_automorphism(const AutomorphismFamily& nu, int a, const Poly& p, const Algebra& A) {
    return apply_affine(nu.nu(a), p, A);
}

WordPoly relation_element(const Presentation& p, int a, int b) {
    WordPoly w;
    add_term(w, {a, b}, p.g(a, b));
    add_term(w, {b, a}, -p.g(b, a));
    add_term(w, {a}, -p.x(b));
    add_term(w, {b}, p.x(a));
    return w;
}

// ---- witness construction ---------------------------------------------------

namespace {

void set_image(AutomorphismFamily& nu, int a, int j, Scalar lambda, Scalar mu) {
    nu.at(a, j) = AffineImage{std::move(lambda), std::move(mu)};
}

Scalar checked_div(const Scalar& num, const Scalar& den, const std::string& what) {
    if (den.is_zero()) throw HypothesisError("division by zero: " + what + " vanishes");
    return num / den;
}

// nu_a(D_b) = (g(a,b) D_b - x_b) / g(b,a), the only choice compatible with the (a,b) relation
void fill_off_diagonal(AutomorphismFamily& nu, const Presentation& p) {
    for (int a = 1; a <= p.n(); ++a)
        for (int b = 1; b <= p.n(); ++b)
            if (a != b) {
                std::string what = "g(" + std::to_string(b) + "," + std::to_string(a) + ")";
                set_image(nu, a, b, checked_div(p.g(a, b), p.g(b, a), what), checked_div(-p.x(b), p.g(b, a), what));
            }
}

void require_uniform(const Presentation& p, int i, const IndexSet& S) {
    for (int s : S)
        if (p.g(i, s) != p.g(i, S.front()) || p.g(s, i) != p.g(S.front(), i))
            throw HypothesisError("coefficients g(i,s) are not uniform over S");
}

}  // namespace

AutomorphismFamily case_i_ansatz(const Presentation& p, const Decomposition& dec) {
    int n = p.n();
    AutomorphismFamily nu(n);
    auto lead = [&](int a, int b) { return p.g(std::min(a, b), std::max(a, b)); };
    for (int a = 1; a <= n; ++a)
        for (int j = 1; j <= n; ++j) {
            if (p.x(j).is_zero()) continue;
            Scalar h(1);
            if (a != j) h = lead(a, j);
            else
                for (int b : dec.I)
                    if (b != a) {
                        h = lead(a, b);
                        break;
                    }
            if (h.is_zero()) continue;
            set_image(nu, a, j, Scalar(1), -p.x(j) / h);
        }
    return nu;
}

AutomorphismFamily build_automorphisms(const Presentation& p, const Decomposition& dec, const FamilyIdentification& fam) {
    if (!dec.T_circ.empty() || !dec.T_bullet.empty()) throw HypothesisError("T is nonempty");
    const IndexSet& I = dec.I;
    AutomorphismFamily nu(p.n());
    fill_off_diagonal(nu, p);

    switch (fam.family) {
        case Family::A_I: {
            Scalar g = p.g(I[0], I[1]);
            for (int i : I) set_image(nu, i, i, Scalar(1), checked_div(-p.x(i), g, "g"));
            return nu;
        }
        case Family::C:
            if (dec.R_components.size() != 1) throw HypothesisError("R splits into several components");
            require_uniform(p, I[0], dec.S);
            return nu;
        case Family::B: {
            int i = I[0], j = I[1];
            Scalar g = p.g(i, j), gL = p.g(j, i);
            if (!dec.S.empty()) {
                if (dec.R_components.size() != 1) throw HypothesisError("S splits into several components");
                require_uniform(p, i, dec.S);
            }
            set_image(nu, i, i, checked_div(gL, g, "g"), checked_div(-p.x(i), g, "g"));
            set_image(nu, j, j, checked_div(g, gL, "g - Lambda"), checked_div(-p.x(j), gL, "g - Lambda"));
            return nu;
        }
        case Family::D:
            return nu;
        default: break;
    }
    throw HypothesisError("family " + to_string(fam.family) + " has no witness construction");
}

AutomorphismReport verify_automorphisms(const AutomorphismFamily& nu, const Presentation& p) {
    AutomorphismReport r;
    Algebra A(p);
    int n = p.n();
    for (int a = 1; a <= n; ++a)
        for (int j = 1; j <= n; ++j)
            if (nu.at(a, j).lambda.is_zero()) {
                r.invertible = false;
                r.details.push_back("nu_" + std::to_string(a) + " kills the linear part of D" + std::to_string(j));
            }
    for (int a = 1; a <= n; ++a)
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) {
                Poly res = apply_affine(nu.nu(a), relation_element(p, u, v), A);
                if (!res.is_zero()) {
                    r.relations_preserved = false;
                    r.details.push_back("nu_" + std::to_string(a) + " on relation (" + std::to_string(u) + "," +
                                        std::to_string(v) + ") leaves " + render(res));
                }
            }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (compose(nu.nu(a), nu.nu(b)) != compose(nu.nu(b), nu.nu(a))) {
                r.pairwise_commute = false;
                r.details.push_back("nu_" + std::to_string(a) + " and nu_" + std::to_string(b) + " do not commute");
            }
    return r;
}

// ---- forms ------------------------------------------------------------------

unsigned mask_of(const IndexSet& s) {
    unsigned m = 0;
    for (int a : s) m |= 1u << (a - 1);
    return m;
}

IndexSet members(unsigned mask) {
    IndexSet s;
    for (int a = 1; mask; ++a, mask >>= 1)
        if (mask & 1u) s.push_back(a);
    return s;
}

GradedForm GradedForm::basis(int n, unsigned mask, const Poly& p) {
    GradedForm f(n, static_cast<int>(members(mask).size()));
    f.add(mask, p);
    return f;
}

Poly GradedForm::coefficient(unsigned mask) const {
    auto it = coeffs.find(mask);
    return it == coeffs.end() ? Poly(n) : it->second;
}

void GradedForm::add(unsigned mask, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = coeffs.emplace(mask, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) coeffs.erase(it);
    }
}

GradedForm& GradedForm::operator+=(const GradedForm& o) {
    for (const auto& [m, p] : o.coeffs) add(m, p);
    return *this;
}

GradedForm& GradedForm::operator-=(const GradedForm& o) {
    for (const auto& [m, p] : o.coeffs) add(m, -p);
    return *this;
}

GradedForm& GradedForm::operator*=(const Scalar& s) {
    if (s.is_zero()) coeffs.clear();
    for (auto& [m, p] : coeffs) p *= s;
    return *this;
}

std::string render(const GradedForm& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<IndexSet, const Poly*>> items;
    for (const auto& [m, p] : f.coeffs) items.emplace_back(members(m), &p);
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) os << " + ";
        const IndexSet& J = items[k].first;
        if (J.empty()) os << "1";
        for (std::size_t e = 0; e < J.size(); ++e) os << (e ? "^" : "") << "dD" << J[e];
        os << " * (" << render(*items[k].second) << ")";
    }
    return os.str();
}

// ---- calculus ---------------------------------------------------------------

Calculus::Calculus(Presentation p, AutomorphismFamily nu) : A_(std::move(p)), nu_(std::move(nu)) {
    if (nu_.n() != A_.n()) throw std::invalid_argument("automorphism family size does not match the presentation");
    nu_omega_ = AffineMap(n());
    for (int a = 1; a <= n(); ++a) nu_omega_ = compose(nu_omega_, nu_.nu(a));
    nu_omega_invertible_ = nu_omega_.invertible();
    if (nu_omega_invertible_) nu_omega_inv_ = inverse(nu_omega_);
}

const AffineMap& Calculus::set_map(unsigned mask) const {
    std::lock_guard lk(mu_);
    auto it = set_maps_.find(mask);
    if (it != set_maps_.end()) return it->second;
    AffineMap f(n());
    for (int a : members(mask)) f = compose(f, nu_.nu(a));
    return set_maps_.emplace(mask, std::move(f)).first->second;
}

Poly Calculus::twist_set(unsigned mask, const Poly& p) const {
    if (mask == 0) return p;
    const AffineMap& f = set_map(mask);
    Poly out(n());
    for (const auto& [m, c] : p.terms()) {
        auto key = std::pair{mask, m};
        Poly img;
        bool hit = false;
        {
            std::lock_guard lk(mu_);
            if (auto it = twist_cache_.find(key); it != twist_cache_.end()) {
                img = it->second;
                hit = true;
            }
        }
        if (!hit) {
            img = apply_affine(f, Poly::monomial(m), A_);
            std::lock_guard lk(mu_);
            twist_cache_.emplace(key, img);
        }
        out += img * c;
    }
    return out;
}

Poly Calculus::twist(int a, const Poly& p) const { return twist_set(1u << (a - 1), p); }

Scalar Calculus::exchange(int a, int b) const { return -nu_.at(a, b).lambda; }

Scalar Calculus::merge_factor(unsigned J, unsigned K) const {
    Scalar c(1);
    for (int j : members(J))
        for (int k : members(K))
            if (j > k) c *= exchange(k, j);
    return c;
}

GradedForm Calculus::right_multiply(const GradedForm& f, const Poly& p) const {
    GradedForm out(f.n, f.degree);
    for (const auto& [m, q] : f.coeffs) out.add(m, A_.multiply(q, p));
    return out;
}

GradedForm Calculus::left_multiply(const Poly& p, const GradedForm& f) const {
    GradedForm out(f.n, f.degree);
    for (const auto& [m, q] : f.coeffs) out.add(m, A_.multiply(twist_set(m, p), q));
    return out;
}

GradedForm Calculus::d(const Poly& p) const {
    GradedForm out(n(), 1);
    for (const auto& [m, c] : p.terms()) {
        if (m.degree() == 0) continue;
        GradedForm dm(n(), 1);
        bool hit = false;
        {
            std::lock_guard lk(mu_);
            if (auto it = d_cache_.find(m); it != d_cache_.end()) {
                dm = it->second;
                hit = true;
            }
        }
        if (!hit) {
            // m = m' D_l with l the lowest index: d(m) = d(m') D_l + dD_l nu_l(m')
            int l = m.lowest();
            Monomial rest = m;
            --rest[l];
            GradedForm head = d(Poly::monomial(rest));
            for (const auto& [J, q] : head.coeffs) dm.add(J, A_.times_generator(q, l));
            dm.add(1u << (l - 1), twist(l, Poly::monomial(rest)));
            std::lock_guard lk(mu_);
            d_cache_.emplace(m, dm);
        }
        dm *= c;
        out += dm;
    }
    return out;
}

GradedForm Calculus::d_word(const WordPoly& w) const {
    GradedForm out(n(), 1);
    for (const auto& [word, c] : w) {
        Poly prefix = Poly::constant(n(), Scalar(1));
        GradedForm acc(n(), 1);
        for (int letter : word) {
            GradedForm next(n(), 1);
            for (const auto& [J, q] : acc.coeffs) next.add(J, A_.times_generator(q, letter));
            next.add(1u << (letter - 1), twist(letter, prefix));
            acc = std::move(next);
            prefix = A_.times_generator(prefix, letter);
        }
        acc *= c;
        out += acc;
    }
    return out;
}

Poly Calculus::partial(int a, const Poly& p) const { return d(p).coefficient(1u << (a - 1)); }

GradedForm Calculus::d(const GradedForm& f) const {
    GradedForm out(n(), f.degree + 1);
    Scalar sign = f.degree % 2 ? Scalar(-1) : Scalar(1);
    for (const auto& [J, p] : f.coeffs) {
        GradedForm dp = d(p);
        for (const auto& [A, q] : dp.coeffs) {
            if (J & A) continue;
            out.add(J | A, q * (sign * merge_factor(J, A)));
        }
    }
    return out;
}

GradedForm Calculus::wedge(const GradedForm& a, const GradedForm& b) const {
    GradedForm out(n(), a.degree + b.degree);
    for (const auto& [J, p] : a.coeffs)
        for (const auto& [K, q] : b.coeffs) {
            if (J & K) continue;
            Poly coef = A_.multiply(twist_set(K, p), q);
            out.add(J | K, coef * merge_factor(J, K));
        }
    return out;
}

GradedForm Calculus::volume(const Poly& p) const { return GradedForm::basis(n(), full_mask(), p); }

Poly Calculus::pi_omega(const GradedForm& top) const {
    for (const auto& [m, p] : top.coeffs)
        if (m != full_mask()) throw std::invalid_argument("pi_omega needs a top-degree form");
    return top.coefficient(full_mask());
}

Poly Calculus::nu_omega(const Poly& p) const { return apply_affine(nu_omega_, p, A_); }

Poly Calculus::nu_omega_inverse(const Poly& p) const {
    if (!nu_omega_invertible_) throw std::domain_error("nu_omega is singular");
    return apply_affine(nu_omega_inv_, p, A_);
}

GradedForm Calculus::omega_bar(unsigned P) const {
    unsigned comp = full_mask() & ~P;
    return GradedForm::basis(n(), comp, Poly::constant(n(), merge_factor(comp, P).inverse()));
}

// ---- checks -----------------------------------------------------------------

std::vector<Monomial> monomials_up_to(int n, int degree) {
    std::vector<Monomial> out;
    Monomial m(n);
    std::function<void(int, int)> rec = [&](int a, int left) {
        if (a > n) {
            out.push_back(m);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            m[a] = k;
            rec(a + 1, left - k);
        }
        m[a] = 0;
    };
    rec(1, degree);
    std::sort(out.begin(), out.end());
    return out;
}

bool check_leibniz_compatibility(const Calculus& c, std::vector<std::string>* details) {
    const Presentation& p = c.algebra().presentation();
    bool ok = true;
    for (int a = 1; a <= p.n(); ++a)
        for (int b = a + 1; b <= p.n(); ++b) {
            GradedForm r = c.d_word(relation_element(p, a, b));
            if (!r.is_zero()) {
                ok = false;
                if (details)
                    details->push_back("d of relation (" + std::to_string(a) + "," + std::to_string(b) + ") = " + render(r));
            }
        }
    return ok;
}

bool check_dd_zero(const Calculus& c, int degree_bound) {
    for (const auto& m : monomials_up_to(c.n(), degree_bound))
        if (!c.d(c.d(Poly::monomial(m))).is_zero()) return false;
    return true;
}

bool check_connectedness(const Calculus& c, int degree_bound) {
    using Key = std::pair<unsigned, Monomial>;
    using Row = std::map<Key, Scalar>;
    std::map<Key, Row> pivots;
    for (const auto& m : monomials_up_to(c.n(), degree_bound)) {
        if (m.degree() == 0) continue;
        Row row;
        for (const auto& [J, p] : c.d(Poly::monomial(m)).coeffs)
            for (const auto& [mono, coef] : p.terms()) row[{J, mono}] = coef;
        if (row.empty()) return false;
        while (!row.empty()) {
            auto lead = row.begin();
            auto piv = pivots.find(lead->first);
            if (piv == pivots.end()) {
                Scalar inv = lead->second.inverse();
                for (auto& [k, v] : row) v *= inv;
                Key key = lead->first;
                pivots.emplace(key, std::move(row));
                row.clear();
                break;
            }
            Scalar f = lead->second;
            for (const auto& [k, v] : piv->second) {
                Scalar nv = row[k] - f * v;
                if (nv.is_zero()) row.erase(k);
                else row[k] = nv;
            }
            if (row.empty()) return false;
        }
    }
    return true;
}

IntegratingFormReport check_integrating_form(const Calculus& c, int k, int degree_bound) {
    IntegratingFormReport r;
    int n = c.n();
    std::vector<unsigned> k_sets, co_sets;
    for (unsigned m = 0; m <= c.full_mask(); ++m) {
        int size = static_cast<int>(members(m).size());
        if (size == k) k_sets.push_back(m);
        if (size == n - k) co_sets.push_back(m);
    }
    for (unsigned J : k_sets)
        for (const auto& mono : monomials_up_to(n, degree_bound)) {
            GradedForm w = GradedForm::basis(n, J, Poly::monomial(mono));
            GradedForm first(n, k), second(n, k);
            for (unsigned P : k_sets) {
                Poly coef = c.pi_omega(c.wedge(c.omega_bar(P), w));
                first += c.right_multiply(GradedForm::basis(n, P, Poly::constant(n, Scalar(1))), coef);
            }
            for (unsigned Q : co_sets) {
                Poly coef = c.nu_omega_inverse(c.pi_omega(c.wedge(w, GradedForm::basis(n, Q, Poly::constant(n, Scalar(1))))));
                second += c.left_multiply(coef, c.omega_bar(Q));
            }
            if (!(first == w)) r.dual_basis = false;
            if (!(second == w)) r.twisted_basis = false;
            if (!r.ok()) return r;
        }
    return r;
}

Poly no_go_residual(const Presentation& p, int i, int t, const AutomorphismFamily& ansatz) {
    Calculus c(p, ansatz);
    GradedForm r = c.d_word(relation_element(p, std::min(i, t), std::max(i, t)));
    return r.coefficient(1u << (i - 1));
}

}  // namespace dalg
