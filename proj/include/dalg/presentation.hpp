#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dalg/scalar.hpp"

namespace dalg {

// Coefficient data of g(i,j) D_i D_j - g(j,i) D_j D_i = x_j D_i - x_i D_j, i < j.
// Indices are 1-based throughout the public interface.
class Presentation {
public:
    Presentation() = default;
    explicit Presentation(int n);

    int n() const { return n_; }

    const Scalar& g(int i, int j) const { return g_[idx(i, j)]; }
    const Scalar& x(int i) const { return x_[static_cast<std::size_t>(i - 1)]; }
    void set_g(int i, int j, Scalar v) { g_[idx(i, j)] = std::move(v); }
    void set_x(int i, Scalar v) { x_[static_cast<std::size_t>(i - 1)] = std::move(v); }

    // coefficient of D_b D_a in the rewrite of D_a D_b (a < b)
    Scalar q(int b, int a) const { return g(b, a) / g(a, b); }

    friend bool operator==(const Presentation&, const Presentation&) = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>((i - 1) * n_ + (j - 1));
    }

    int n_ = 0;
    std::vector<Scalar> g_;
    std::vector<Scalar> x_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string render_presentation(const Presentation& p);

// Structural violations only; an empty list means valid.
std::vector<std::string> validate_presentation(const Presentation& p);

}  // namespace dalg
