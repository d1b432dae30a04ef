#include "doctest.h"

#include <algorithm>

#include "christol/curve.hpp"
#include "christol/expr.hpp"
#include "christol/series.hpp"

#include "oracles.hpp"

using namespace christol;

namespace {
PlaneCurve curve_of(const Fq& F, const std::string& expr) {
    return PlaneCurve(F, parse_curve_expr(F, expr));
}
} // namespace

TEST_CASE("degree and height") {
    Fq F7 = Fq::prime_field(7);
    PlaneCurve c1 = curve_of(F7, "(1-2*x)*T-1");
    CHECK(c1.degree() == 1);
    CHECK(c1.height() == 1);

    Fq F2 = Fq::prime_field(2);
    PlaneCurve tm = curve_of(F2, "(1+x)^3*T^2 + (1+x)^2*T + x");
    CHECK(tm.degree() == 2);
    CHECK(tm.height() == 3);

    Fq F5 = Fq::prime_field(5);
    PlaneCurve ell = curve_of(F5, "(1-4*x^3)*T^2-1");
    CHECK(ell.degree() == 2);
    CHECK(ell.height() == 3);
}

TEST_CASE("inseparable defining polynomials are rejected") {
    Fq F = Fq::prime_field(2);
    // T^2 - x: the T-derivative vanishes identically in characteristic 2.
    CHECK_THROWS_AS(curve_of(F, "T^2 - x"), UserError);
    // Degenerate: no T at all.
    CHECK_THROWS_AS(curve_of(F, "x^2 + 1"), UserError);
}

TEST_CASE("reducible curves are caught lazily with a factor") {
    Fq F = Fq::prime_field(3);
    // T^2 - (1+x)^2 is separable but splits; inverting y - (1+x) hits a
    // zero divisor.
    PlaneCurve c = curve_of(F, "T^2 - (1+x)^2");
    FFElem u = c.sub(c.gen(), c.from_ratfunc(rf_from_poly(poly_from(F, {1, 1}))));
    try {
        c.inv(u);
        CHECK(false);
    } catch (const NotInvertible& e) {
        CHECK(!e.factor.empty());
    }
}

TEST_CASE("field tower arithmetic in K") {
    Fq F = Fq::prime_field(5);
    PlaneCurve c = curve_of(F, "(1-4*x)*T^2-1");
    FFElem y = c.gen();
    // y^2 = 1/(1-4x) from the defining polynomial.
    FFElem y2 = c.mul(y, y);
    FFElem expect = c.from_ratfunc(rf_make(F, poly_from(F, {1}), poly_from(F, {1, 1})));
    CHECK(y2 == expect);
    CHECK(c.mul(y, c.inv(y)) == c.one());
    CHECK(c.is_zero(c.eval_f(y)));
    CHECK(c.is_zero(c.sub(y, y)));
}

TEST_CASE("Cartier sections scale the powers-of-2 branch") {
    Fq F = Fq::prime_field(7);
    PlaneCurve c = curve_of(F, "(1-2*x)*T-1");
    FFElem y = c.gen();
    // a(7n+i) = 2^i 2^n, so lambda_i(y) = 2^i y.
    for (unsigned i = 0; i < 7; ++i) {
        FFElem got = c.lambda_p(i, y);
        FFElem want = c.mul_scalar(y, rf_constant(F.pow(2, i)));
        CHECK(got == want);
    }
}

TEST_CASE("K^p decomposition recomposes (deterministic case)") {
    Fq F = Fq::prime_field(2);
    PlaneCurve c = curve_of(F, "(1+x)^3*T^2 + (1+x)^2*T + x");
    FFElem y = c.gen();
    std::vector<FFElem> vs = c.kp_decompose(y);
    REQUIRE(vs.size() == 2);
    FFElem acc = c.zero();
    for (unsigned i = 0; i < 2; ++i) {
        FFElem sq = c.mul(vs[i], vs[i]);
        acc = c.add(acc, c.mul_scalar(sq, rf_from_poly(poly_shift(Poly::constant(1), i))));
    }
    CHECK(acc == y);
    for (unsigned i = 0; i < 2; ++i) CHECK(c.lambda_p(i, y) == vs[i]);
}

TEST_CASE("frobenius slicing of rational functions") {
    Fq F = Fq::prime_field(2);
    RatFunc g = rf_make(F, poly_from(F, {1}), poly_from(F, {1, 1})); // 1/(1+x)
    std::vector<RatFunc> slices = rf_frobenius_split(F, g);
    REQUIRE(slices.size() == 2);
    // 1/(1+x) = (1+x)/(1+x^2) = R_0(x^2) + x R_1(x^2) with R_0 = R_1 = 1/(1+x).
    CHECK(slices[0] == g);
    CHECK(slices[1] == g);
}

TEST_CASE("branch expansion by Newton iteration") {
    SUBCASE("powers of 2 mod 7") {
        Fq F = Fq::prime_field(7);
        PlaneCurve c = curve_of(F, "(1-2*x)*T-1");
        TruncSeries s = hensel_expand(c, 1, 4);
        CHECK(s.c == std::vector<fq_t>{1, 2, 4, 1});
    }
    SUBCASE("central binomial mod 5") {
        Fq F = Fq::prime_field(5);
        PlaneCurve c = curve_of(F, "(1-4*x)*T^2-1");
        TruncSeries s = hensel_expand(c, 1, 5);
        CHECK(s.c == std::vector<fq_t>{1, 2, 1, 0, 0});
        // 3 is not a residue root of T^2 - 1.
        CHECK_THROWS_AS(hensel_expand(c, 3, 5), UserError);
    }
    SUBCASE("Artin-Schreier branch matches the lacunary series") {
        Fq F = Fq::prime_field(2);
        PlaneCurve c = curve_of(F, "T^2 - T - x");
        TruncSeries s = hensel_expand(c, 0, 32);
        CHECK(s.c == oracles::artin_schreier_series(2, 2, 1, 32));
    }
    SUBCASE("Thue-Morse branch") {
        Fq F = Fq::prime_field(2);
        PlaneCurve c = curve_of(F, "(1+x)^3*T^2 + (1+x)^2*T + x");
        TruncSeries s = hensel_expand(c, 0, 64);
        CHECK(s.c == oracles::tm_series(64));
    }
}

TEST_CASE("curve residue separates true branch prefixes from impostors") {
    Fq F = Fq::prime_field(5);
    PlaneCurve c = curve_of(F, "(1-4*x)*T^2-1");
    TruncSeries s = hensel_expand(c, 1, 12);

    TruncSeries zero = ts_eval_curve(c, s, 12);
    CHECK(std::all_of(zero.c.begin(), zero.c.end(), [](fq_t v) { return v == 0; }));

    // Corrupting one coefficient leaves a nonzero residue.
    TruncSeries bad = s;
    bad.c[4] = F.add(bad.c[4], 1);
    TruncSeries res = ts_eval_curve(c, bad, 12);
    CHECK(std::any_of(res.c.begin(), res.c.end(), [](fq_t v) { return v != 0; }));

    // A wrong constant term fails immediately: f(0, 2) = 3 != 0.
    TruncSeries fake = ts_from(F, {2, 0, 0});
    TruncSeries res2 = ts_eval_curve(c, fake, 3);
    CHECK(res2.c[0] != 0);
}

TEST_CASE("series arithmetic") {
    Fq F = Fq::prime_field(3);
    TruncSeries geo = ts_of_ratfunc(F, rf_make(F, poly_from(F, {1}), poly_from(F, {1, 2})), 8);
    CHECK(geo.c == std::vector<fq_t>{1, 1, 1, 1, 1, 1, 1, 1}); // 1/(1-x)
    TruncSeries inv = ts_inv(F, geo, 8);
    TruncSeries prod = ts_mul(F, geo, inv);
    CHECK(prod.at(0) == 1);
    for (int n = 1; n < 8; ++n) CHECK(prod.at(n) == 0);
    CHECK(ts_sub(F, geo, geo).at(3) == 0);
    CHECK(ts_scale(F, geo, 2).at(5) == 2);
    CHECK_THROWS_AS(ts_inv(F, ts_from(F, {0, 1}), 4), UserError);
}

TEST_CASE("truncated Cartier operator halves Thue-Morse") {
    Fq F = Fq::prime_field(2);
    TruncSeries s = ts_from(F, oracles::tm_series(64));
    TruncSeries l0 = trunc_lambda(F, 0, s); // tm(2n) = tm(n)
    for (int n = 0; n < l0.precision(); ++n) CHECK(l0.at(n) == oracles::tm_series(32)[n]);
    TruncSeries l1 = trunc_lambda(F, 1, s); // tm(2n+1) = 1 - tm(n)
    for (int n = 0; n < l1.precision(); ++n) CHECK(l1.at(n) == 1 - oracles::tm_series(32)[n]);
    CHECK_THROWS_AS(trunc_lambda(F, 1, ts_from(F, {1})), ComputeRefusal);
}

TEST_CASE("decimation of a plain sequence") {
    Fq F = Fq::prime_field(5);
    TruncSeries s = ts_from(F, {0, 1, 2, 3, 4, 0, 1, 2, 3, 4});
    TruncSeries d = ts_decimate(5, 2, s);
    CHECK(d.at(0) == 2);
    CHECK(d.at(1) == 2);
    CHECK(d.precision() == 2);
}

TEST_CASE("series of a function field element along a branch") {
    Fq F = Fq::prime_field(5);
    PlaneCurve c = curve_of(F, "(1-4*x)*T^2-1");
    TruncSeries branch = hensel_expand(c, 1, 40);
    // y itself.
    TruncSeries sy = ff_to_series(c, branch, c.gen(), 32);
    for (int n = 0; n < 32; ++n) CHECK(sy.at(n) == oracles::central_binom_series(5, 32)[n]);
    CHECK(ff_const_term(c, branch, c.gen()) == 1);
    // A rational combination: x * y + 3.
    FFElem u = c.add(c.mul_scalar(c.gen(), rf_from_poly(Poly::x())), c.from_ratfunc(rf_constant(3)));
    TruncSeries su = ff_to_series(c, branch, u, 16);
    CHECK(su.at(0) == 3);
    for (int n = 1; n < 16; ++n) CHECK(su.at(n) == oracles::central_binom_series(5, 16)[n - 1]);
}
