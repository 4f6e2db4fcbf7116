#include "rank_arrange/bounds.hpp"
#include "rank_arrange/errors.hpp"
#include "rank_arrange/reference.hpp"

#include <doctest.h>

using namespace rank_arrange;

TEST_CASE("lower bound examples")
{
    CHECK(lower_ell(4) == 2);
    CHECK(lower_ell(5) == 6);
    CHECK(lower_ell(6) == make_rational(81, 2));
    CHECK(ceil_of(lower_ell(6)) == 41);
    CHECK_THROWS_AS(lower_ell(3), RangeError);
}

TEST_CASE("upper bound examples")
{
    CHECK(floor_of_interval(upper_u(4)) == 12);
    CHECK(floor_of_interval(upper_u(5)) == 334);
    CHECK(floor_of_interval(upper_u(6)) == 18744);
    for (std::size_t m = 4; m <= 12; ++m) {
        const RationalInterval u = upper_u(m);
        CHECK(u.lo < u.hi);
        CHECK_NOTHROW(floor_of_interval(u));
    }
}

TEST_CASE("e enclosure")
{
    const RationalInterval e = e_enclosure();
    CHECK(e.lo < parse_rational("2718281828459045236/1000000000000000000"));
    CHECK(e.hi > parse_rational("2718281828459045235/1000000000000000000"));
    CHECK(e.hi - e.lo < Rational(BigInt(1), BigInt("1" + std::string(50, '0'))));
    CHECK_THROWS_AS(floor_of_interval({make_rational(9, 10), make_rational(11, 10)}), ConsistencyFailure);
}

TEST_CASE("a(m) and f(m) examples")
{
    CHECK(a_seq(4) == 2);
    CHECK(a_seq(5) == 12);
    CHECK(a_seq(6) == 168);
    CHECK(a_seq(8) == 223920);
    CHECK(a_seq(9) == 16470720);
    CHECK(f_seq(5) == 12);
    CHECK(f_seq(6) == 286);
    CHECK(f_seq(8) == 23178480);
    CHECK(f_seq(10) == BigInt("3973186258569120"));
}

TEST_CASE("formatting")
{
    CHECK(group_thousands(BigInt(18744)) == "18,744");
    CHECK(group_thousands(BigInt(486)) == "486");
    CHECK(group_thousands(BigInt(-1234567)) == "-1,234,567");
    CHECK(scientific3(BigInt(1820000)) == "1.82 x 10^6");
    CHECK_THROWS_AS(scientific3(BigInt(1821000)), RangeError);
}

TEST_CASE("bounds table rows")
{
    const auto rows = bounds_table(10);
    REQUIRE(rows.size() == 7);
    const BoundsRow& r7 = rows[3];
    CHECK(r7.m == 7);
    CHECK(r7.r0_cell == "4,680");
    CHECK(r7.a_cell == "4,680");
    CHECK(r7.ell_cell == "486");
    CHECK(r7.u_cell == "1.82 x 10^6");
    CHECK(r7.f_cell == "33,592");
    CHECK(rows[5].r0_cell == "18,330,206");
    CHECK(rows[5].a_cell == "16,470,720");
    CHECK(rows[6].f_cell == "3,973,186,258,569,120");
    CHECK(rows[6].ell_cell == "9.05 x 10^6");
    CHECK_THROWS_AS(bounds_table(13), RangeError);
    CHECK(bounds_table(12).size() == 9);
}

TEST_CASE("order relations")
{
    for (const auto& r : bounds_table(10)) {
        REQUIRE(r.r0.has_value());
        const Rational r0(*r.r0);
        CHECK(r.ell <= r0);
        CHECK(r0 < r.u.lo);
        CHECK(*r.r0 <= r.f);
        if (r.m <= 7)
            CHECK(*r.r0 == r.a);
        else
            CHECK(*r.r0 > r.a);
    }
    for (std::size_t m = 4; m <= 12; ++m) {
        const Rational f(f_seq(m));
        const RationalInterval u = upper_u(m);
        if (m <= 8)
            CHECK(f < u.lo);
        else
            CHECK(f > u.hi);
    }
}

TEST_CASE("asymptotic ratios")
{
    // At m = 200 both normalized roots are still well short of their limits.
    const RationalInterval u200 = asymptotic_ratio(200, AsymptoticSide::Upper);
    CHECK(u200.lo >= make_rational(840, 1000));
    CHECK(u200.hi <= make_rational(843, 1000));
    const RationalInterval l200 = asymptotic_ratio(200, AsymptoticSide::Lower);
    CHECK(l200.lo >= make_rational(891, 1000));
    CHECK(l200.hi <= make_rational(894, 1000));
    CHECK_FALSE(asymptotic_within(200, AsymptoticSide::Upper, make_rational(1, 20)));
    CHECK(asymptotic_within(1000, AsymptoticSide::Upper, make_rational(1, 20)));
    CHECK(asymptotic_within(1000, AsymptoticSide::Lower, make_rational(1, 20)));
    // monotone approach
    Rational prev_u = 0, prev_l = 0;
    for (std::size_t m : {50, 100, 200, 400}) {
        const RationalInterval u = asymptotic_ratio(m, AsymptoticSide::Upper, 4);
        const RationalInterval l = asymptotic_ratio(m, AsymptoticSide::Lower, 4);
        CHECK(u.lo > prev_u);
        CHECK(l.lo > prev_l);
        CHECK(u.hi < 1);
        CHECK(l.hi < 1);
        prev_u = u.hi;
        prev_l = l.hi;
    }
}
