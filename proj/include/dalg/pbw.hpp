#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "dalg/polynomial.hpp"
#include "dalg/presentation.hpp"

namespace dalg {

enum class Strategy { leftmost, rightmost };

struct RewriteStats {
    std::size_t steps = 0;
    // longest chain of rewrites from an input word to a normal word
    std::size_t depth = 0;
    // every rewrite produced words of strictly smaller (length, inversions)
    bool measure_decreasing = true;
};

// pairs of positions p < q with w[p] < w[q]
std::size_t inversions(const Word& w);

// Literal rewriting of every adjacent increasing pair until none is left.
Poly normal_form(const WordPoly& w, const Presentation& p, Strategy s = Strategy::leftmost,
                 RewriteStats* stats = nullptr);
Poly normal_form(const Word& w, const Presentation& p, Strategy s = Strategy::leftmost,
                 RewriteStats* stats = nullptr);

// One rewrite at the increasing pair starting at position k.
WordPoly rewrite_at(const Word& w, std::size_t k, const Presentation& p);

struct TripleCheck {
    bool confluent = false;
    Poly nf_left;
    Poly nf_right;
};

TripleCheck diamond_check_triple(const Presentation& p, int a, int b, int c);

struct PbwReport {
    bool pbw = true;
    std::optional<std::array<int, 3>> first_failure;
};

PbwReport is_pbw(const Presentation& p);

// Ring structure on the PBW basis. Right multiplication of a basis monomial by a
// generator is memoized, so keep one instance around for repeated products.
class Algebra {
public:
    explicit Algebra(Presentation p);
    Algebra(const Algebra& o) : p_(o.p_) {}

    const Presentation& presentation() const { return p_; }
    int n() const { return p_.n(); }

    Poly times_generator(const Monomial& m, int a) const;
    Poly times_generator(const Poly& p, int a) const;
    Poly multiply(const Poly& a, const Poly& b) const;
    Poly evaluate(const WordPoly& w) const;
    Poly evaluate(const Word& w) const;
    Poly power(const Poly& p, int k) const;

private:
    Presentation p_;
    mutable std::map<std::pair<Monomial, int>, Poly> cache_;
    mutable std::mutex mu_;
};

Poly multiply(const Poly& a, const Poly& b, const Presentation& p);

}  // namespace dalg
