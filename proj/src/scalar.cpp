#include "dalg/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace dalg {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
    std::string_view body = text;
    bool neg = false;
    if (!body.empty() && body.front() == '-') {
        neg = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Scalar r;
    r.q_ = mpq_class(neg ? mpz_class(-n) : n, d);
    r.q_.canonicalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar r;
    r.q_ = 1 / q_;
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace dalg
