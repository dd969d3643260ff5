#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "mwt/errors.hpp"

namespace mwt {

using bigint = boost::multiprecision::cpp_int;

// 10^e.  Small exponents come from a prebuilt table, large ones are computed.
bigint pow10(unsigned e);

// Floor division (round toward -inf), which cpp_int's operator/ does not do
// for negative numerators.
bigint floor_div(const bigint& num, const bigint& den);

/// An exact fixed-point decimal: the real number value * 10^(-scale_exp).
/// Nothing here ever rounds; mixed-scale operands are aligned to the larger
/// scale exponent (always exact, since raising the scale multiplies by a
/// power of ten).
struct ScaledInt {
    bigint value;
    unsigned scale_exp = 0;

    ScaledInt() = default;
    ScaledInt(bigint v, unsigned scale) : value(std::move(v)), scale_exp(scale) {}
    explicit ScaledInt(long v) : value(v), scale_exp(0) {}

    // Same number, expressed with a larger scale exponent.
    ScaledInt rescaled(unsigned new_scale_exp) const;

    ScaledInt operator-() const { return ScaledInt(-value, scale_exp); }
    ScaledInt operator+(const ScaledInt& o) const;
    ScaledInt operator-(const ScaledInt& o) const;
    ScaledInt operator*(const ScaledInt& o) const;  // scale exponents add

    bool operator==(const ScaledInt& o) const { return compare(o) == 0; }
    bool operator!=(const ScaledInt& o) const { return compare(o) != 0; }
    bool operator<(const ScaledInt& o) const { return compare(o) < 0; }
    bool operator<=(const ScaledInt& o) const { return compare(o) <= 0; }
    bool operator>(const ScaledInt& o) const { return compare(o) > 0; }
    bool operator>=(const ScaledInt& o) const { return compare(o) >= 0; }

    int sign() const { return value.sign(); }

    // -1 / 0 / +1 after aligning both operands to the common scale.
    int compare(const ScaledInt& o) const;
};

/// A closed interval [lo, hi] * 10^(-scale_exp) of integers enclosing one
/// real value (typically a sum of Euclidean lengths).  Addition and
/// subtraction are outward-exact: the result encloses every sum of members.
struct IntInterval {
    bigint lo;
    bigint hi;
    unsigned scale_exp = 0;

    IntInterval() = default;
    IntInterval(bigint l, bigint h, unsigned scale);

    static IntInterval exact(const ScaledInt& v) {
        return IntInterval(v.value, v.value, v.scale_exp);
    }
    static IntInterval zero(unsigned scale) { return IntInterval(0, 0, scale); }

    IntInterval rescaled(unsigned new_scale_exp) const;

    IntInterval operator+(const IntInterval& o) const;
    IntInterval operator-(const IntInterval& o) const;
    IntInterval& operator+=(const IntInterval& o) { return *this = *this + o; }
    IntInterval& operator-=(const IntInterval& o) { return *this = *this - o; }

    // Exact shift by a point value.
    IntInterval operator+(const ScaledInt& v) const { return *this + exact(v); }
    IntInterval operator-(const ScaledInt& v) const { return *this - exact(v); }

    bool operator==(const IntInterval& o) const;

    bigint width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }

    ScaledInt lower() const { return ScaledInt(lo, scale_exp); }
    ScaledInt upper() const { return ScaledInt(hi, scale_exp); }
    bool contains(const ScaledInt& v) const;
};

// Smallest interval containing both inputs.
IntInterval hull(const IntInterval& a, const IntInterval& b);

// Set intersection; raises internal_check if the operands are disjoint.
IntInterval intersect(const IntInterval& a, const IntInterval& b);

enum class Ordering { less, greater, overlapping };

const char* ordering_name(Ordering o);

/// Less iff a is entirely below b, Greater iff entirely above, otherwise
/// Overlapping.  Overlapping is a verdict, not a failure: the caller decides
/// whether a tie is acceptable.
Ordering interval_compare(const IntInterval& a, const IntInterval& b);

/// Parses a plain decimal (optional sign, digits, optional '.' + digits; no
/// exponent) into an exact value at the requested scale.
/// Raises too_many_fraction_digits when a nonzero digit appears past
/// scale_exp fractional places, malformed_number for anything non-decimal.
ScaledInt parse_fixed_decimal(std::string_view text, unsigned scale_exp);

/// Canonical decimal text: sign only when negative, no leading zeros, the
/// fractional part trimmed of trailing zeros and dropped entirely when zero.
/// parse_fixed_decimal(to_decimal_string(v), v.scale_exp) round-trips.
std::string to_decimal_string(const ScaledInt& v);

/// Fixed-width decimal text with exactly `digits` fractional places
/// (digits <= scale_exp; the dropped tail must be zero or this raises
/// internal_check — it is a formatter, not a rounder).
std::string format_fixed(const ScaledInt& v, unsigned digits);

/// Floor square root with a verified enclosure: [s, s] when n = s^2,
/// otherwise [s, s+1] with s = floor(sqrt(n)).  The postcondition
/// s^2 <= n < (s+1)^2 is asserted on every call.
IntInterval interval_isqrt(const bigint& n);

struct Point {
    ScaledInt x;
    ScaledInt y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

/// Enclosure of the Euclidean distance |pq| at scale 10^(-out_scale_exp),
/// of width at most one unit in the last place; exact whenever the squared
/// distance is a perfect square at that scale.  Requires out_scale_exp at
/// least the coordinate scale.
IntInterval edge_length(const Point& p, const Point& q, unsigned out_scale_exp);

/// Result of rounding an interval to a display precision.  `unique` is true
/// iff every value in the interval rounds to the same decimal; otherwise the
/// two candidate roundings are reported and `text` shows the range.
struct DisplayRounding {
    bool unique = false;
    ScaledInt lo_rounded;
    ScaledInt hi_rounded;
    std::string text;
};

/// Rounds to `digits` fractional places, half away from the interval toward
/// +inf (floor((x + 5*10^(k-1)) / 10^k) on the integer representation).
/// Never silently collapses an ambiguous interval.
DisplayRounding display_round(const IntInterval& v, unsigned digits);

}  // namespace mwt
