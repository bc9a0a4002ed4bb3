#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace dalg {

// Exact rational, always kept in lowest terms with a positive denominator.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(long num, long den);
    explicit Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // "-3", "7/2", "-1/4"; throws std::invalid_argument
    static Scalar parse(std::string_view text);

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    std::string numerator() const { return q_.get_num().get_str(); }
    std::string denominator() const { return q_.get_den().get_str(); }
    std::string str() const { return q_.get_str(); }
    const mpq_class& raw() const { return q_; }

    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
    Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
    Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { Scalar r; r.q_ = -q_; return r; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace dalg
