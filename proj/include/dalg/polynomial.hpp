#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dalg/scalar.hpp"

namespace dalg {

// Free-monoid word; letters are generator indices 1..n in written order.
using Word = std::vector<int>;
using WordPoly = std::map<Word, Scalar>;

void add_term(WordPoly& p, const Word& w, const Scalar& c);

// PBW basis element D_n^{k_n} ... D_1^{k_1}; exps[a-1] = k_a.
struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(int n) : exps(static_cast<std::size_t>(n), 0) {}
    static Monomial generator(int n, int a);

    int n() const { return static_cast<int>(exps.size()); }
    int operator[](int a) const { return exps[static_cast<std::size_t>(a - 1)]; }
    int& operator[](int a) { return exps[static_cast<std::size_t>(a - 1)]; }
    int degree() const;
    // smallest index with positive exponent, 0 for the unit
    int lowest() const;
    Word word() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // graded: degree first, then exponents compared from D_n downwards
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

class Poly {
public:
    using Terms = std::map<Monomial, Scalar>;

    Poly() = default;
    explicit Poly(int n) : n_(n) {}
    static Poly constant(int n, const Scalar& c);
    static Poly generator(int n, int a);
    static Poly monomial(const Monomial& m, const Scalar& c = Scalar(1));

    int n() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;  // -1 for zero
    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const;

    void add(const Monomial& m, const Scalar& c);
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Scalar& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
    Poly operator-() const { return *this * Scalar(-1); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    int n_ = 0;
    Terms terms_;
};

WordPoly to_words(const Poly& p);

// term := [RATIONAL "*"] factor+ | RATIONAL ; factor := "D" INT ["^" INT]
// poly := ["-"] term (("+"|"-") term)*
WordPoly parse_expression(std::string_view text, int n);

std::string render(const Poly& p);
std::string render(const WordPoly& p);
std::string render_word(const Word& w);

}  // namespace dalg
