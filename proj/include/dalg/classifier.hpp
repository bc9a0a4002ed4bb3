#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dalg/presentation.hpp"

namespace dalg {

using IndexSet = std::vector<int>;

enum class Family { A_I, A_II, B, C, D, Inconsistent };
std::string to_string(Family f);

struct Decomposition {
    IndexSet I;
    IndexSet R;
    std::vector<IndexSet> R_components;  // ordered by smallest element
    IndexSet S;
    std::vector<IndexSet> T_circ;
    std::vector<IndexSet> T_bullet;

    IndexSet T() const;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

Decomposition decompose(const Presentation& p);

struct FamilyIdentification {
    Family family = Family::Inconsistent;
    std::map<std::string, Scalar> params;
    std::vector<std::string> violations;
};

FamilyIdentification identify_family(const Presentation& p, const Decomposition& dec);

// Name of the three-generator case (A_I, A_II, B(1)..B(4), C(1), C(2), D) by shape.
std::optional<std::string> three_generator_case(const Decomposition& dec, Family f);

// Linear combination of named parameters plus a constant; terms keep insertion order.
class LinExpr {
public:
    LinExpr() = default;
    LinExpr(long c) : constant_(c) {}
    static LinExpr param(const std::string& name);

    bool is_zero() const { return terms_.empty() && constant_.is_zero(); }
    Scalar evaluate(const std::map<std::string, Scalar>& values) const;
    std::string str() const;
    // single parameter with coefficient +-1 or a bare constant
    bool is_atom() const;
    int leading_sign() const;

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    LinExpr operator-() const;

private:
    void add(const std::string& name, const Scalar& c);
    std::vector<std::pair<std::string, Scalar>> terms_;
    Scalar constant_;
};

// "expr != 0", displayed as text.
struct Restriction {
    LinExpr expr;
    std::string text;
};

struct Template {
    Family family = Family::Inconsistent;
    int n = 0;
    std::string label;
    Decomposition dec;
    std::vector<std::string> params;
    std::vector<Restriction> restrictions;
    // g(a,b) and x_a as expressions; index (a-1)*n+(b-1)
    std::vector<LinExpr> g;
    std::vector<LinExpr> x;

    const LinExpr& g_at(int a, int b) const { return g[static_cast<std::size_t>((a - 1) * n + (b - 1))]; }
};

enum class TableMode { paper, full };

std::vector<Template> generate_templates(int n, TableMode mode);

class RestrictionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws RestrictionError naming the first violated restriction, or
// std::invalid_argument for a missing parameter.
Presentation instantiate_template(const Template& t, const std::map<std::string, Scalar>& params);

std::string render_relation(const Template& t, int p, int q);
std::string render_template(const Template& t);
std::string render_templates(const std::vector<Template>& ts);
std::string render_set(const IndexSet& s);
std::string render_sets(const std::vector<IndexSet>& ss);

}  // namespace dalg
