#include "mwt/exact.hpp"

#include <array>
#include <cctype>

namespace mwt {

namespace {

constexpr unsigned kPow10TableSize = 64;

const std::array<bigint, kPow10TableSize>& pow10_table() {
    static const std::array<bigint, kPow10TableSize> table = [] {
        std::array<bigint, kPow10TableSize> t;
        t[0] = 1;
        for (unsigned i = 1; i < kPow10TableSize; ++i) t[i] = t[i - 1] * 10;
        return t;
    }();
    return table;
}

}  // namespace

bigint pow10(unsigned e) {
    if (e < kPow10TableSize) return pow10_table()[e];
    return boost::multiprecision::pow(bigint(10), e);
}

bigint floor_div(const bigint& num, const bigint& den) {
    bigint q = num / den;
    if ((num % den) != 0 && ((num < 0) != (den < 0))) --q;
    return q;
}

ScaledInt ScaledInt::rescaled(unsigned new_scale_exp) const {
    if (new_scale_exp < scale_exp)
        raise(errc::scale_mismatch, "cannot lower a scale exponent exactly");
    if (new_scale_exp == scale_exp) return *this;
    return ScaledInt(value * pow10(new_scale_exp - scale_exp), new_scale_exp);
}

ScaledInt ScaledInt::operator+(const ScaledInt& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    return ScaledInt(rescaled(s).value + o.rescaled(s).value, s);
}

ScaledInt ScaledInt::operator-(const ScaledInt& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    return ScaledInt(rescaled(s).value - o.rescaled(s).value, s);
}

ScaledInt ScaledInt::operator*(const ScaledInt& o) const {
    return ScaledInt(value * o.value, scale_exp + o.scale_exp);
}

int ScaledInt::compare(const ScaledInt& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    return rescaled(s).value.compare(o.rescaled(s).value);
}

IntInterval::IntInterval(bigint l, bigint h, unsigned scale)
    : lo(std::move(l)), hi(std::move(h)), scale_exp(scale) {
    if (lo > hi) raise(errc::internal_check, "interval bounds out of order");
}

IntInterval IntInterval::rescaled(unsigned new_scale_exp) const {
    if (new_scale_exp < scale_exp)
        raise(errc::scale_mismatch, "cannot lower a scale exponent exactly");
    if (new_scale_exp == scale_exp) return *this;
    const bigint f = pow10(new_scale_exp - scale_exp);
    return IntInterval(lo * f, hi * f, new_scale_exp);
}

IntInterval IntInterval::operator+(const IntInterval& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    IntInterval a = rescaled(s), b = o.rescaled(s);
    return IntInterval(a.lo + b.lo, a.hi + b.hi, s);
}

IntInterval IntInterval::operator-(const IntInterval& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    IntInterval a = rescaled(s), b = o.rescaled(s);
    return IntInterval(a.lo - b.hi, a.hi - b.lo, s);
}

bool IntInterval::operator==(const IntInterval& o) const {
    unsigned s = std::max(scale_exp, o.scale_exp);
    IntInterval a = rescaled(s), b = o.rescaled(s);
    return a.lo == b.lo && a.hi == b.hi;
}

bool IntInterval::contains(const ScaledInt& v) const {
    unsigned s = std::max(scale_exp, v.scale_exp);
    IntInterval a = rescaled(s);
    const bigint& x = v.rescaled(s).value;
    return a.lo <= x && x <= a.hi;
}

IntInterval hull(const IntInterval& a, const IntInterval& b) {
    unsigned s = std::max(a.scale_exp, b.scale_exp);
    IntInterval x = a.rescaled(s), y = b.rescaled(s);
    return IntInterval(std::min(x.lo, y.lo), std::max(x.hi, y.hi), s);
}

IntInterval intersect(const IntInterval& a, const IntInterval& b) {
    unsigned s = std::max(a.scale_exp, b.scale_exp);
    IntInterval x = a.rescaled(s), y = b.rescaled(s);
    bigint lo = std::max(x.lo, y.lo), hi = std::min(x.hi, y.hi);
    if (lo > hi) raise(errc::internal_check, "intersection of disjoint intervals");
    return IntInterval(std::move(lo), std::move(hi), s);
}

const char* ordering_name(Ordering o) {
    switch (o) {
        case Ordering::less: return "Less";
        case Ordering::greater: return "Greater";
        case Ordering::overlapping: return "Overlapping";
    }
    return "?";
}

Ordering interval_compare(const IntInterval& a, const IntInterval& b) {
    unsigned s = std::max(a.scale_exp, b.scale_exp);
    IntInterval x = a.rescaled(s), y = b.rescaled(s);
    if (x.hi < y.lo) return Ordering::less;
    if (x.lo > y.hi) return Ordering::greater;
    return Ordering::overlapping;
}

ScaledInt parse_fixed_decimal(std::string_view text, unsigned scale_exp) {
    size_t i = 0;
    const size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = (text[i] == '-');
        ++i;
    }

    const size_t int_begin = i;
    bigint v = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
    }
    if (i == int_begin)
        raise(errc::malformed_number,
              "expected digits in '" + std::string(text) + "'");

    unsigned frac_used = 0;
    if (i < n && text[i] == '.') {
        ++i;
        const size_t frac_begin = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            const char d = text[i];
            if (frac_used < scale_exp) {
                v = v * 10 + (d - '0');
                ++frac_used;
            } else if (d != '0') {
                raise(errc::too_many_fraction_digits,
                      "'" + std::string(text) + "' does not fit scale 10^-" +
                          std::to_string(scale_exp));
            }
            ++i;
        }
        if (i == frac_begin)
            raise(errc::malformed_number,
                  "missing fraction digits in '" + std::string(text) + "'");
    }
    if (i != n)
        raise(errc::malformed_number,
              "trailing characters in '" + std::string(text) + "'");

    v *= pow10(scale_exp - frac_used);
    if (negative) v = -v;
    return ScaledInt(std::move(v), scale_exp);
}

std::string to_decimal_string(const ScaledInt& v) {
    const bool negative = v.value < 0;
    bigint mag = negative ? bigint(-v.value) : v.value;
    const bigint p = pow10(v.scale_exp);
    bigint whole = mag / p;
    bigint frac = mag % p;

    std::string out;
    if (negative && mag != 0) out += '-';
    out += whole.str();
    if (frac != 0) {
        std::string f = frac.str();
        f.insert(f.begin(), v.scale_exp - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += '.';
        out += f;
    }
    return out;
}

std::string format_fixed(const ScaledInt& v, unsigned digits) {
    if (digits > v.scale_exp)
        raise(errc::scale_mismatch, "format_fixed wants more digits than stored");
    const bigint drop = pow10(v.scale_exp - digits);
    if (v.value % drop != 0)
        raise(errc::internal_check,
              "format_fixed would round a nonzero tail: " + to_decimal_string(v));
    const bigint scaled = v.value / drop;

    const bool negative = scaled < 0;
    bigint mag = negative ? bigint(-scaled) : scaled;
    const bigint p = pow10(digits);
    std::string out;
    if (negative) out += '-';
    out += bigint(mag / p).str();
    if (digits > 0) {
        std::string f = bigint(mag % p).str();
        f.insert(f.begin(), digits - f.size(), '0');
        out += '.';
        out += f;
    }
    return out;
}

IntInterval interval_isqrt(const bigint& n) {
    if (n < 0) raise(errc::negative_radicand, "isqrt of " + n.str());
    bigint s = boost::multiprecision::sqrt(n);
    // The backend already returns the floor root; refine defensively anyway
    // so the verified postcondition below never depends on it.
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    if (!(s * s <= n && n < (s + 1) * (s + 1)))
        raise(errc::internal_check, "isqrt postcondition failed for " + n.str());
    if (s * s == n) return IntInterval(s, s, 0);
    return IntInterval(s, bigint(s + 1), 0);
}

IntInterval edge_length(const Point& p, const Point& q, unsigned out_scale_exp) {
    const unsigned cs = std::max(std::max(p.x.scale_exp, p.y.scale_exp),
                                 std::max(q.x.scale_exp, q.y.scale_exp));
    if (out_scale_exp < cs)
        raise(errc::scale_mismatch,
              "edge_length output scale below coordinate scale");
    const bigint dx = p.x.rescaled(cs).value - q.x.rescaled(cs).value;
    const bigint dy = p.y.rescaled(cs).value - q.y.rescaled(cs).value;
    const bigint sq = (dx * dx + dy * dy) * pow10(2 * (out_scale_exp - cs));
    IntInterval root = interval_isqrt(sq);
    return IntInterval(std::move(root.lo), std::move(root.hi), out_scale_exp);
}

DisplayRounding display_round(const IntInterval& v, unsigned digits) {
    IntInterval iv = v.scale_exp < digits ? v.rescaled(digits) : v;
    const unsigned k = iv.scale_exp - digits;
    const bigint p = pow10(k);
    const bigint half = k == 0 ? bigint(0) : bigint(5 * pow10(k - 1));

    DisplayRounding out;
    out.lo_rounded = ScaledInt(floor_div(iv.lo + half, p), digits);
    out.hi_rounded = ScaledInt(floor_div(iv.hi + half, p), digits);
    out.unique = (out.lo_rounded.value == out.hi_rounded.value);
    if (out.unique) {
        out.text = format_fixed(out.lo_rounded, digits);
    } else {
        out.text = "[" + format_fixed(out.lo_rounded, digits) + ", " +
                   format_fixed(out.hi_rounded, digits) + "]";
    }
    return out;
}

}  // namespace mwt
