#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace tessiso {

/// Exact rational number. All lengths, weights and characteristic values in
/// the library are carried in this type.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p/q", an integer "p", or a finite decimal "a.b" (also "-a.b",
/// "1e-3" is not accepted). Throws Error(ErrorCode::ParseError).
Rational parse_rational(std::string_view text);

/// Always "p/q" with q > 0 and gcd(p,q) = 1, so that 1 prints as "1/1".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// A rational extended by a single positive infinity. Only the operations the
/// curvature formulas need are provided; in particular reciprocal(inf) == 0.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(const Rational& v) : value_(v) {}  // NOLINT(implicit)
    ExtRational(long long v) : value_(v) {}        // NOLINT(implicit)

    static ExtRational infinity() {
        ExtRational r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Precondition: is_finite().
    const Rational& value() const;

    /// 1/x with 1/inf = 0. Throws on 1/0.
    Rational reciprocal() const;

    ExtRational operator+(const ExtRational& o) const;
    ExtRational operator*(const Rational& factor) const;  // factor > 0

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    Rational value_{0};
    bool infinite_ = false;
};

/// "p/q" or "inf".
std::string to_string(const ExtRational& r);
ExtRational parse_ext_rational(std::string_view text);

inline std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << to_string(r); }

}  // namespace tessiso
