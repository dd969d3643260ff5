#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mwt/exact.hpp"

using namespace mwt;

namespace {

IntInterval one_ulp_around(const char* text, unsigned scale) {
    ScaledInt v = parse_fixed_decimal(text, scale);
    return IntInterval(v.value, bigint(v.value + 1), scale);
}

}  // namespace

TEST_CASE("parse_fixed_decimal exact representations") {
    ScaledInt a = parse_fixed_decimal("-2.7", 4);
    CHECK(a.value == -27000);
    CHECK(a.scale_exp == 4);

    ScaledInt z = parse_fixed_decimal("0.00", 4);
    CHECK(z.value == 0);

    ScaledInt w = parse_fixed_decimal("82.21", 2);
    CHECK(w.value == 8221);

    CHECK(parse_fixed_decimal("+3.14", 2).value == 314);
    CHECK(parse_fixed_decimal("-0", 3).value == 0);
    // Zeros past the scale carry no information and are accepted.
    CHECK(parse_fixed_decimal("0.120000", 2).value == 12);
}

TEST_CASE("parse_fixed_decimal canonical round-trip") {
    for (const char* text : {"-2.7", "82.21", "0", "11.2", "-0.0001", "5655172"}) {
        ScaledInt v = parse_fixed_decimal(text, 4);
        CHECK(to_decimal_string(v) == text);
    }
    CHECK(to_decimal_string(parse_fixed_decimal("0.00", 4)) == "0");
    CHECK(to_decimal_string(parse_fixed_decimal("-0", 4)) == "0");
    CHECK(to_decimal_string(parse_fixed_decimal("007.50", 2)) == "7.5");
}

TEST_CASE("parse_fixed_decimal rejections") {
    CHECK_THROWS_WITH_AS(parse_fixed_decimal("1.2345", 3), doctest::Contains("TooManyFractionDigits"), error);
    for (const char* bad : {"", "-", "+", "abc", "1..2", "1.2.3", "1e5", ".5", "5.", " 1", "1 ", "--1", "0x10"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_fixed_decimal(bad, 6), error);
    }
    try {
        parse_fixed_decimal("xyz", 2);
        FAIL("expected error");
    } catch (const error& e) {
        CHECK(e.code() == errc::malformed_number);
    }
}

TEST_CASE("format_fixed pads and never rounds") {
    ScaledInt v = parse_fixed_decimal("5.4", 15);
    CHECK(format_fixed(v, 9) == "5.400000000");
    CHECK(format_fixed(parse_fixed_decimal("5", 15), 0) == "5");
    CHECK(format_fixed(parse_fixed_decimal("-0.25", 6), 3) == "-0.250");
    // Dropping a nonzero tail is a logic error, not a rounding.
    CHECK_THROWS_AS(format_fixed(parse_fixed_decimal("0.1234", 4), 2), error);
}

TEST_CASE("interval_isqrt frozen values") {
    // Oracle first: the bounds below are verified by squaring before the
    // function under test is consulted at all.
    const bigint n = bigint(2) * pow10(30);
    const bigint lo("1414213562373095");
    const bigint hi("1414213562373096");
    REQUIRE(lo * lo <= n);
    REQUIRE(n < hi * hi);
    REQUIRE(hi == lo + 1);

    IntInterval r = interval_isqrt(n);
    CHECK(r.lo == lo);
    CHECK(r.hi == hi);

    IntInterval p = interval_isqrt(bigint(25));
    CHECK(p.lo == 5);
    CHECK(p.hi == 5);

    IntInterval z = interval_isqrt(bigint(0));
    CHECK(z.lo == 0);
    CHECK(z.hi == 0);

    CHECK_THROWS_AS(interval_isqrt(bigint(-1)), error);
}

TEST_CASE("interval_isqrt randomized soundness") {
    std::mt19937_64 rng(20260823);
    for (int trial = 0; trial < 20000; ++trial) {
        bigint n = rng() >> (trial % 40);
        if (trial % 3 == 0) n = n * rng() + rng();  // stretch past 64 bits
        IntInterval r = interval_isqrt(n);
        CHECK(r.lo * r.lo <= n);
        CHECK(n < (r.hi + 1) * (r.hi + 1));
        CHECK(r.hi - r.lo <= 1);
        if (r.lo == r.hi) CHECK(r.lo * r.lo == n);
        else CHECK(n < r.hi * r.hi);
    }
}

TEST_CASE("edge_length exact and enclosed cases") {
    auto pt = [](const char* x, const char* y, unsigned scale) {
        return Point{parse_fixed_decimal(x, scale), parse_fixed_decimal(y, scale)};
    };

    IntInterval d345 = edge_length(pt("0", "0", 0), pt("3", "4", 0), 15);
    CHECK(d345.lo == bigint(5) * pow10(15));
    CHECK(d345.is_point());

    IntInterval diag = edge_length(pt("0", "0", 0), pt("1", "1", 0), 15);
    CHECK(diag.lo == bigint("1414213562373095"));
    CHECK(diag.hi == bigint("1414213562373096"));

    // Horizontal segment between the two base corners of the small junction
    // triangle: exact because the squared distance is a perfect square.
    IntInterval base = edge_length(pt("-2.7", "11.2", 4), pt("2.7", "11.2", 4), 15);
    CHECK(base.lo == bigint(54) * pow10(14));
    CHECK(base.is_point());

    IntInterval coincident = edge_length(pt("8.1", "-3.2", 4), pt("8.1", "-3.2", 4), 15);
    CHECK(coincident.lo == 0);
    CHECK(coincident.is_point());
}

TEST_CASE("interval_compare trichotomy") {
    IntInterval a(3, 4, 0), b(5, 6, 0), c(3, 5, 0);
    CHECK(interval_compare(a, b) == Ordering::less);
    CHECK(interval_compare(b, a) == Ordering::greater);
    CHECK(interval_compare(c, b) == Ordering::overlapping);
    CHECK(interval_compare(a, a) == Ordering::overlapping);

    // Mixed scales: [1,2] vs 1.5 must overlap.
    CHECK(interval_compare(IntInterval(1, 2, 0), IntInterval(15, 15, 1)) ==
          Ordering::overlapping);

    // One-ulp enclosures of two reduced costs that differ in the 4th decimal
    // place compare unambiguously.
    CHECK(interval_compare(one_ulp_around("455.679921006", 15),
                           one_ulp_around("455.593524745", 15)) ==
          Ordering::greater);
}

TEST_CASE("interval arithmetic is outward-exact and monotone") {
    IntInterval a(10, 12, 2), b(-3, 5, 2);
    IntInterval s = a + b;
    CHECK(s.lo == 7);
    CHECK(s.hi == 17);
    IntInterval d = a - b;
    CHECK(d.lo == 5);
    CHECK(d.hi == 15);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const long alo = static_cast<long>(rng() % 2000) - 1000;
        const long blo = static_cast<long>(rng() % 2000) - 1000;
        IntInterval x(alo, alo + static_cast<long>(rng() % 50), 3);
        IntInterval y(blo, blo + static_cast<long>(rng() % 50), 3);
        IntInterval base = x + y;
        IntInterval wide(x.lo - 1, x.hi + 2, 3);
        IntInterval sum = wide + y;
        CHECK(sum.lo <= base.lo);
        CHECK(sum.hi >= base.hi);
    }
}

TEST_CASE("interval hull and intersection") {
    IntInterval a(0, 10, 1), b(4, 20, 1);
    CHECK(hull(a, b) == IntInterval(0, 20, 1));
    CHECK(intersect(a, b) == IntInterval(4, 10, 1));
    CHECK_THROWS_AS(intersect(IntInterval(0, 1, 1), IntInterval(5, 6, 1)), error);
}

TEST_CASE("display rounding detects ambiguity") {
    // Scale 15 down to 9 fractional digits: the rounding step is 10^6.
    DisplayRounding plain = display_round(one_ulp_around("455.471523435", 15), 9);
    CHECK(plain.unique);
    CHECK(plain.text == "455.471523435");

    DisplayRounding split = display_round(IntInterval(1499999, 1500001, 15), 9);
    CHECK_FALSE(split.unique);
    CHECK(split.text == "[0.000000001, 0.000000002]");

    DisplayRounding tight = display_round(IntInterval(1400000, 1400001, 15), 9);
    CHECK(tight.unique);
    CHECK(tight.text == "0.000000001");

    DisplayRounding negsplit = display_round(IntInterval(-1500001, -1499999, 15), 9);
    CHECK_FALSE(negsplit.unique);

    // Exact-scale display (no drop) is the identity.
    DisplayRounding same = display_round(IntInterval(8221, 8221, 2), 2);
    CHECK(same.unique);
    CHECK(same.text == "82.21");
}

TEST_CASE("determinism of repeated evaluation") {
    Point p{parse_fixed_decimal("123.4567", 4), parse_fixed_decimal("-9.8765", 4)};
    Point q{parse_fixed_decimal("-55.5555", 4), parse_fixed_decimal("0.0001", 4)};
    IntInterval first = edge_length(p, q, 15);
    for (int i = 0; i < 5; ++i) CHECK(edge_length(p, q, 15) == first);
}
