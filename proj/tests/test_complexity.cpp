#include "doctest.h"

#include <numeric>

#include <nlohmann/json.hpp>

#include "christol/complexity.hpp"
#include "christol/expr.hpp"
#include "christol/kernel.hpp"
#include "christol/series.hpp"

#include "oracles.hpp"

using namespace christol;

namespace {
PlaneCurve curve_of(const Fq& F, const std::string& expr) {
    return PlaneCurve(F, parse_curve_expr(F, expr));
}

// Reference maximizer: walk every partition of n (parts non-increasing,
// bounded by m) carrying the running lcm.  The lcm of an optimal partition
// does not decompose greedily, so the accumulator is essential.
void landau_walk(unsigned n, unsigned m, std::uint64_t acc, std::uint64_t& best) {
    if (n == 0) {
        best = std::max(best, acc);
        return;
    }
    for (unsigned k = std::min(n, m); k >= 1; --k)
        landau_walk(n - k, k, std::lcm<std::uint64_t>(acc, k), best);
}

std::uint64_t landau_brute(unsigned n) {
    std::uint64_t best = 1;
    landau_walk(n, n, 1, best);
    return best;
}
} // namespace

TEST_CASE("Landau's function") {
    CHECK(landau(0) == 1);
    CHECK(landau(1) == 1);
    CHECK(landau(5) == 6);
    CHECK(landau(7) == 12);
    for (unsigned n = 0; n <= 40; ++n) CHECK(landau(n) == landau_brute(n));
}

TEST_CASE("bounds report for the elliptic example") {
    Fq F = Fq::prime_field(5);
    ComplexityReport rep = bounds_report(F, 2, 3, 1, 9, std::nullopt);
    CHECK(rep.genus_used == 1);
    CHECK_FALSE(rep.genus_substituted);
    CHECK(rep.landau_arg == 7); // h + 2d
    CHECK(rep.landau_val == 12);
    REQUIRE(rep.bounds.size() == 5);
    CHECK(rep.bounds[0].name == "main");
    CHECK(rep.bounds[0].value == 3125); // 5^(3+2+1-1)
    CHECK(rep.bounds[0].verdict == "PASS");
    CHECK(rep.bounds[4].name == "genus_free");
    CHECK(rep.bounds[4].value == 15625); // 5^(3*2)
    CHECK(rep.bounds[4].verdict == "PASS");
    CHECK(rep.bounds[3].name == "forward");
    CHECK(rep.bounds[3].verdict == "SKIP"); // no forward count supplied
    std::string text = report_text(rep);
    CHECK(text.find("main") != std::string::npos);
    CHECK(text.find("3125") != std::string::npos);
    auto j = nlohmann::json::parse(report_json(rep));
    CHECK(j["q"] == 5);
    CHECK(j["bounds"][0]["value"] == "3125"); // big integers as decimal strings
}

TEST_CASE("main bound is tight for a degree-1 height-1 series over F_2") {
    Fq F = Fq::prime_field(2);
    ComplexityReport rep = bounds_report(F, 1, 1, 0, 2, 2);
    CHECK(rep.bounds[0].value == 2); // 2^(1+1+0-1)
    CHECK(rep.bounds[0].verdict == "PASS");
    CHECK(rep.bounds[3].verdict == "PASS");
}

TEST_CASE("Castelnuovo fallback is flagged") {
    Fq F = Fq::prime_field(5);
    ComplexityReport rep = bounds_report(F, 2, 3, std::nullopt, 9, std::nullopt);
    CHECK(rep.genus_substituted);
    CHECK(rep.genus_used == 2); // (d-1)(h-1)
    bigint want = 1;
    for (int i = 0; i < 6; ++i) want *= 5; // 5^(3+2+2-1)
    CHECK(rep.bounds[0].value == want);
    std::string text = report_text(rep);
    CHECK(text.find("Castelnuovo") != std::string::npos);
}

TEST_CASE("bound failure is reported, not hidden") {
    Fq F = Fq::prime_field(2);
    ComplexityReport rep = bounds_report(F, 1, 1, 0, 1000, std::nullopt);
    CHECK(rep.bounds[0].verdict == "FAIL");
}

TEST_CASE("base-p versus base-q state counts") {
    SUBCASE("geometric series over F_4 collapses to one state") {
        Fq F = Fq::extension(2, 2);
        PlaneCurve c = curve_of(F, "(1-x)*T-1");
        TruncSeries branch = ts_of_ratfunc(F, rf_make(F, Poly::constant(1), poly_from(F, {1, 1})), 64);
        BaseCompare bc = base_compare(c, branch);
        CHECK(bc.n_q == 1);
        CHECK(bc.n_p == 1);
        CHECK(bc.pass);
    }
    SUBCASE("Artin-Schreier over F_4") {
        Fq F = Fq::extension(2, 2);
        PlaneCurve c = curve_of(F, "T^4 - T - x");
        BaseCompare bc = base_compare(c, hensel_expand(c, 0, 64));
        CHECK(bc.n_q == 3); // m + 2 with m = 1
        CHECK(bc.n_p >= bc.n_q);
        CHECK(bc.n_p <= 3 * bc.n_q);
        CHECK(bc.pass);
    }
    SUBCASE("prime fields compare the same kernel to itself") {
        Fq F = Fq::prime_field(2);
        PlaneCurve c = curve_of(F, "(1+x)^3*T^2 + (1+x)^2*T + x");
        BaseCompare bc = base_compare(c, hensel_expand(c, 0, 64));
        CHECK(bc.n_p == bc.n_q);
        CHECK(bc.pass);
    }
}

TEST_CASE("algebraize recovers defining relations") {
    SUBCASE("all-ones sequence over F_2") {
        Fq F = Fq::prime_field(2);
        Bivariate rel = algebraize(F, ts_from(F, oracles::geometric_series(64)), 1);
        REQUIRE(rel.deg_T() == 1);
        CHECK(rel.byT[0] == Poly::constant(1));
        CHECK(rel.byT[1] == poly_from(F, {1, 1})); // (1+x)T + 1
    }
    SUBCASE("powers of 2 mod 7 gives the degree-1 relation up to scalar") {
        Fq F = Fq::prime_field(7);
        Bivariate rel = algebraize(F, ts_from(F, oracles::pow2_series(7, 500)), 3);
        REQUIRE(rel.deg_T() == 1);
        CHECK(rel.byT[0] == Poly::constant(1));
        CHECK(rel.byT[1] == poly_from(F, {6, 2})); // (2x - 1)T + 1
    }
    SUBCASE("Thue-Morse stays within the coarse caps and annihilates") {
        Fq F = Fq::prime_field(2);
        TruncSeries s = ts_from(F, oracles::tm_series(500));
        Bivariate rel = algebraize(F, s, 2);
        CHECK(rel.deg_T() <= 3);
        CHECK(bivariate_deg_x(rel) <= 16);
        TruncSeries acc = ts_of_poly(Poly::zero(), 500);
        TruncSeries pw = ts_of_poly(Poly::constant(1), 500);
        for (int j = 0; j < (int)rel.byT.size(); ++j) {
            acc = ts_add(F, acc, ts_mul(F, ts_of_poly(rel.byT[j], 500), pw));
            pw = ts_mul(F, pw, s);
        }
        for (int n = 0; n < 500; ++n) CHECK(acc.at(n) == 0);
        CHECK(bivariate_to_string(F, rel).find('T') != std::string::npos);
    }
    SUBCASE("caps too small: refusal mentioning the caps") {
        Fq F = Fq::prime_field(2);
        TruncSeries s = ts_from(F, oracles::tm_series(500));
        CHECK_THROWS_AS(algebraize(F, s, 2, 1, 1), ComputeRefusal);
    }
    SUBCASE("not enough series coefficients") {
        Fq F = Fq::prime_field(2);
        CHECK_THROWS_AS(algebraize(F, ts_from(F, {1, 1, 1, 1}), 1), UserError);
    }
}
