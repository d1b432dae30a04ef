#include "doctest.h"

#include <nlohmann/json.hpp>

#include "christol/expr.hpp"
#include "christol/rational_sweep.hpp"

using namespace christol;

namespace {
ZPoly zp(std::initializer_list<long long> cs) {
    ZPoly out;
    for (long long c : cs) out.push_back(ZInt(c));
    zp_trim(out);
    return out;
}
} // namespace

TEST_CASE("curve expression parsing") {
    Fq F5 = Fq::prime_field(5);
    std::vector<Poly> c = parse_curve_expr(F5, "(1-4*x)*T^2 - 1");
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Poly::constant(4));
    CHECK(c[1].is_zero());
    CHECK(c[2] == poly_from(F5, {1, 1})); // 1 - 4x = 1 + x mod 5

    Fq F2 = Fq::prime_field(2);
    std::vector<Poly> as = parse_curve_expr(F2, "T^4 - T - x");
    REQUIRE(as.size() == 5);
    CHECK(as[0] == Poly::x());
    CHECK(as[1] == Poly::constant(1));
    CHECK(as[2].is_zero());
    CHECK(as[4] == Poly::constant(1));

    // y is an alias for T; literals fold through the prime subfield.
    Fq F3 = Fq::prime_field(3);
    std::vector<Poly> al = parse_curve_expr(F3, "y^2 - 10*x");
    REQUIRE(al.size() == 3);
    CHECK(al[0] == poly_from(F3, {0, 2})); // -10x = 2x
    CHECK(al[2] == Poly::constant(1));
}

TEST_CASE("curve expression errors carry offsets") {
    Fq F = Fq::prime_field(2);
    try {
        parse_curve_expr(F, "T^^2");
        CHECK(false);
    } catch (const UserError& e) {
        CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_curve_expr(F, "z + 1"), UserError);
    CHECK_THROWS_AS(parse_curve_expr(F, "T/x"), UserError);       // no division in curves
    CHECK_THROWS_AS(parse_curve_expr(F, "x^-2"), UserError);      // negative exponent
    CHECK_THROWS_AS(parse_curve_expr(F, "((x)"), UserError);      // unbalanced
    CHECK_THROWS_AS(parse_curve_expr(F, ""), UserError);
}

TEST_CASE("rational expression parsing") {
    RationalSeriesQ a = parse_rational_expr("1/(1-2*x)");
    CHECK(a.num == zp({-1}));
    CHECK(a.den == zp({-1, 2})); // leading coefficient normalized positive

    RationalSeriesQ b = parse_rational_expr("(1+x)/(1-x^3)");
    CHECK(b.num == zp({-1, -1}));
    CHECK(b.den == zp({-1, 0, 0, 1}));

    RationalSeriesQ c = parse_rational_expr("x/(1-x) + 1"); // = 1/(1-x)
    CHECK(c.num == zp({-1}));
    CHECK(c.den == zp({-1, 1}));

    CHECK_THROWS_AS(parse_rational_expr("T + 1"), UserError);   // x only
    CHECK_THROWS_AS(parse_rational_expr("1/x"), UserError);     // pole at 0
    CHECK_THROWS_AS(parse_rational_expr("1/(x-x)"), UserError); // zero denominator
}

TEST_CASE("rational series canonical form") {
    // (x^2-1)/(x-1) reduces to x+1.
    RationalSeriesQ r = make_rational_series(zp({-1, 0, 1}), zp({-1, 1}));
    CHECK(r.num == zp({1, 1}));
    CHECK(r.den == zp({1}));
    // Content is cleared and the sign fixed by the denominator.
    RationalSeriesQ s = make_rational_series(zp({2, 2}), zp({-4}));
    CHECK(s.num == zp({-1, -1}));
    CHECK(s.den == zp({2}));
    CHECK_THROWS_AS(make_rational_series(zp({1}), zp({0, 1})), UserError);
    CHECK_THROWS_AS(make_rational_series(zp({1}), zp({})), UserError);
}

TEST_CASE("boundedness classification") {
    CHECK(classify_bounded(parse_rational_expr("(1+x)/(1-x^3)")) == Boundedness::Bounded);
    CHECK(classify_bounded(parse_rational_expr("1/(1-2*x)")) == Boundedness::Unbounded);
    // Double pole at a root of unity still grows.
    CHECK(classify_bounded(make_rational_series(zp({1}), zp({1, -2, 1}))) == Boundedness::Unbounded);
    // Polynomials are trivially bounded.
    CHECK(classify_bounded(parse_rational_expr("1 + 3*x^2")) == Boundedness::Bounded);
}

TEST_CASE("coefficients modulo a prime") {
    Fq F = Fq::prime_field(3);
    std::vector<fq_t> cs = qseries_mod_p(F, parse_rational_expr("1/(1-2*x)"), 6);
    CHECK(cs == std::vector<fq_t>{1, 2, 1, 2, 1, 2});
}

TEST_CASE("prime sweep") {
    RationalSeriesQ y = parse_rational_expr("1/(1-2*x)");
    SweepResult res = prime_sweep(y, {2, 3, 5, 7});
    CHECK(res.verdict == Boundedness::Unbounded);
    REQUIRE(res.rows.size() == 4);
    CHECK_FALSE(res.rows[0].n_p.has_value()); // p = 2 divides the leading coefficient
    CHECK(res.rows[0].skipped_reason.find("leading coefficient") != std::string::npos);
    CHECK(res.rows[1].n_p == 2);
    CHECK(res.rows[2].n_p == 4);
    CHECK(res.rows[3].n_p == 3);

    // Composite entries are skipped with a reason, never computed.
    SweepResult comp = prime_sweep(y, {9, 5});
    CHECK_FALSE(comp.rows[0].n_p.has_value());
    CHECK(comp.rows[0].skipped_reason.find("not prime") != std::string::npos);

    CHECK_THROWS_AS(prime_sweep(y, {2}), UserError); // nothing admissible

    std::string text = sweep_text(res);
    CHECK(text.find("over Q") != std::string::npos);
    auto j = nlohmann::json::parse(sweep_json(res));
    CHECK(j["field"] == "Q");
    CHECK(j["verdict"] == "Unbounded");
    CHECK(j["rows"].size() == 4);
}

TEST_CASE("bounded sweep is constant across primes") {
    RationalSeriesQ y = parse_rational_expr("(1+x)/(1-x^3)");
    SweepResult res = prime_sweep(y, {2, 3, 5, 7, 11, 13});
    CHECK(res.verdict == Boundedness::Bounded);
    for (const auto& row : res.rows) {
        REQUIRE(row.n_p.has_value());
        CHECK(*row.n_p == 3);
    }
}
