#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/classifier.hpp"
#include "dalg/pbw.hpp"

namespace dalg {

// nu(D_j) = lambda * D_j + mu
struct AffineImage {
    Scalar lambda{1};
    Scalar mu{0};
    friend bool operator==(const AffineImage&, const AffineImage&) = default;
};

class AffineMap {
public:
    AffineMap() = default;
    explicit AffineMap(int n) : img_(static_cast<std::size_t>(n)) {}

    int n() const { return static_cast<int>(img_.size()); }
    const AffineImage& operator[](int j) const { return img_[static_cast<std::size_t>(j - 1)]; }
    AffineImage& operator[](int j) { return img_[static_cast<std::size_t>(j - 1)]; }
    bool invertible() const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    std::vector<AffineImage> img_;
};

// (outer o inner)(D_j) = outer(inner(D_j))
AffineMap compose(const AffineMap& outer, const AffineMap& inner);
AffineMap inverse(const AffineMap& f);
Poly apply_affine(const AffineMap& f, const Poly& p, const Algebra& A);
Poly apply_affine(const AffineMap& f, const WordPoly& w, const Algebra& A);

class AutomorphismFamily {
public:
    AutomorphismFamily() = default;
    explicit AutomorphismFamily(int n);  // all identities

    int n() const { return static_cast<int>(maps_.size()); }
    const AffineMap& nu(int a) const { return maps_[static_cast<std::size_t>(a - 1)]; }
    AffineMap& nu(int a) { return maps_[static_cast<std::size_t>(a - 1)]; }
    const AffineImage& at(int a, int j) const { return nu(a)[j]; }
    AffineImage& at(int a, int j) { return nu(a)[j]; }

    friend bool operator==(const AutomorphismFamily&, const AutomorphismFamily&) = default;

private:
    std::vector<AffineMap> maps_;
};

std::string render_family(const AutomorphismFamily& nu);

enum class TheoremCase { i, ii, iii, iv };
std::string to_string(TheoremCase c);

class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Witness maps for the four smooth cases, selected by family (A_I, C, B, D).
AutomorphismFamily build_automorphisms(const Presentation& p, const Decomposition& dec, const FamilyIdentification& fam);

// nu_a(D_j) = D_j - x_j / h(a,j) with h the leading coefficient of the pair {a,j};
// the shape used for |I| >= 3, applied to any presentation.
AutomorphismFamily case_i_ansatz(const Presentation& p, const Decomposition& dec);

Poly apply_automorphism(const AutomorphismFamily& nu, int a, const Poly& p, const Algebra& A);

struct AutomorphismReport {
    bool relations_preserved = true;
    bool pairwise_commute = true;
    bool invertible = true;
    std::vector<std::string> details;
    bool ok() const { return relations_preserved && pairwise_commute && invertible; }
};

AutomorphismReport verify_automorphisms(const AutomorphismFamily& nu, const Presentation& p);

// g(p,q) D_p D_q - g(q,p) D_q D_p - x_q D_p + x_p D_q for p < q
WordPoly relation_element(const Presentation& p, int a, int b);

// Element of Omega^k as a right module: sum over increasing J of dD_J * coeff.
// J is a bitmask with bit a-1 set for generator a.
struct GradedForm {
    int n = 0;
    int degree = 0;
    std::map<unsigned, Poly> coeffs;

    GradedForm() = default;
    GradedForm(int n_, int k) : n(n_), degree(k) {}
    static GradedForm basis(int n, unsigned mask, const Poly& p);

    bool is_zero() const { return coeffs.empty(); }
    Poly coefficient(unsigned mask) const;
    void add(unsigned mask, const Poly& p);
    GradedForm& operator+=(const GradedForm& o);
    GradedForm& operator-=(const GradedForm& o);
    GradedForm& operator*=(const Scalar& s);
    friend bool operator==(const GradedForm& a, const GradedForm& b) { return a.coeffs == b.coeffs; }
};

unsigned mask_of(const IndexSet& s);
IndexSet members(unsigned mask);
std::string render(const GradedForm& f);

class Calculus {
public:
    Calculus(Presentation p, AutomorphismFamily nu);

    const Algebra& algebra() const { return A_; }
    const AutomorphismFamily& family() const { return nu_; }
    int n() const { return A_.n(); }

    Poly twist(int a, const Poly& p) const;
    // composite of nu_k over k in the mask
    Poly twist_set(unsigned mask, const Poly& p) const;

    // dD_b ^ dD_a = exchange(a,b) dD_a ^ dD_b for a < b
    Scalar exchange(int a, int b) const;
    // dD_J ^ dD_K = merge_factor(J,K) dD_{J u K} for disjoint J, K
    Scalar merge_factor(unsigned J, unsigned K) const;

    GradedForm d(const Poly& p) const;
    GradedForm d_word(const WordPoly& w) const;
    GradedForm d(const GradedForm& f) const;
    Poly partial(int a, const Poly& p) const;

    GradedForm wedge(const GradedForm& a, const GradedForm& b) const;
    GradedForm left_multiply(const Poly& p, const GradedForm& f) const;
    GradedForm right_multiply(const GradedForm& f, const Poly& p) const;

    unsigned full_mask() const { return (1u << n()) - 1u; }
    GradedForm volume(const Poly& p) const;
    Poly pi_omega(const GradedForm& top) const;
    const AffineMap& nu_omega_map() const { return nu_omega_; }
    Poly nu_omega(const Poly& p) const;
    Poly nu_omega_inverse(const Poly& p) const;
    // dD_{P^c} scaled so that omega_bar(P) ^ dD_P = omega
    GradedForm omega_bar(unsigned P) const;

private:
    const AffineMap& set_map(unsigned mask) const;

    Algebra A_;
    AutomorphismFamily nu_;
    AffineMap nu_omega_;
    AffineMap nu_omega_inv_;
    bool nu_omega_invertible_ = false;

    mutable std::mutex mu_;
    mutable std::map<unsigned, AffineMap> set_maps_;
    mutable std::map<std::pair<unsigned, Monomial>, Poly> twist_cache_;
    mutable std::map<Monomial, GradedForm> d_cache_;
};

bool check_leibniz_compatibility(const Calculus& c, std::vector<std::string>* details = nullptr);
bool check_dd_zero(const Calculus& c, int degree_bound);
bool check_connectedness(const Calculus& c, int degree_bound);

struct IntegratingFormReport {
    bool dual_basis = true;    // w' = sum_i w_i pi(wbar_i ^ w')
    bool twisted_basis = true;  // w' = sum_i nu_omega^{-1}(pi(w' ^ w_i)) wbar_i
    bool ok() const { return dual_basis && twisted_basis; }
};

IntegratingFormReport check_integrating_form(const Calculus& c, int k, int degree_bound);

// dD_i coefficient of d applied to the (i,t) relation under the given maps.
Poly no_go_residual(const Presentation& p, int i, int t, const AutomorphismFamily& ansatz);

std::vector<Monomial> monomials_up_to(int n, int degree);

}  // namespace dalg
