#include "doctest.h"

#include "christol/fq.hpp"
#include "christol/linalg.hpp"
#include "christol/poly.hpp"
#include "christol/ratfunc.hpp"

using namespace christol;

TEST_CASE("prime field arithmetic") {
    Fq F = Fq::prime_field(7);
    CHECK(F.q() == 7);
    CHECK(F.add(5, 4) == 2);
    CHECK(F.mul(3, 5) == 1);
    CHECK(F.inv(3) == 5);
    CHECK(F.neg(0) == 0);
    CHECK(F.neg(2) == 5);
    CHECK(F.pow(3, 6) == 1);
    CHECK(F.from_int(-1) == 6);
    CHECK(F.from_int(100) == 2);
}

TEST_CASE("primality helper") {
    CHECK(Fq::is_prime(2));
    CHECK(Fq::is_prime(3));
    CHECK(Fq::is_prime(97));
    CHECK_FALSE(Fq::is_prime(0));
    CHECK_FALSE(Fq::is_prime(1));
    CHECK_FALSE(Fq::is_prime(91)); // 7 * 13
    CHECK_THROWS_AS(Fq::prime_field(6), UserError);
}

TEST_CASE("default extension moduli are the lexicographically first irreducibles") {
    Fq F4 = Fq::extension(2, 2);
    CHECK(F4.modulus() == std::vector<fq_t>{1, 1, 1}); // t^2 + t + 1
    Fq F9 = Fq::extension(3, 2);
    CHECK(F9.modulus() == std::vector<fq_t>{1, 0, 1}); // t^2 + 1
}

TEST_CASE("F_4 multiplication table") {
    Fq F = Fq::extension(2, 2);
    fq_t t = 2; // the residue of the generator
    CHECK(F.mul(t, t) == 3);        // t^2 = t + 1
    CHECK(F.mul(t, 3) == 1);        // t * (t+1) = t^2 + t = 1
    CHECK(F.inv(t) == 3);
    CHECK(F.pow(t, 3) == 1);
    CHECK(F.frobenius(t) == 3);     // conjugate
}

TEST_CASE("explicit modulus is validated") {
    // t^2 + 1 is reducible over F_2.
    CHECK_THROWS_AS(Fq::extension(2, 2, std::vector<fq_t>{1, 0, 1}), UserError);
}

TEST_CASE("p-th roots invert Frobenius for every q <= 64") {
    struct P { std::uint64_t p; unsigned r; };
    for (P pr : {P{2, 1}, P{3, 1}, P{2, 2}, P{5, 1}, P{7, 1}, P{2, 3}, P{3, 2},
                 P{2, 4}, P{5, 2}, P{3, 3}, P{7, 2}, P{2, 5}, P{2, 6}}) {
        Fq F = pr.r == 1 ? Fq::prime_field(pr.p) : Fq::extension(pr.p, pr.r);
        for (fq_t a = 0; a < F.q(); ++a) {
            CHECK(F.pow(F.pth_root(a), pr.p) == a);
            CHECK(F.pth_root(F.frobenius(a)) == a);
        }
    }
}

TEST_CASE("packing round trip") {
    Fq F = Fq::extension(3, 2);
    for (fq_t a = 0; a < F.q(); ++a) CHECK(F.pack(F.digits(a)) == a);
}

TEST_CASE("polynomial division and gcd") {
    Fq F = Fq::prime_field(5);
    Poly a = poly_from(F, {4, 0, 1});       // x^2 + 4 = x^2 - 1
    Poly b = poly_from(F, {1, 2, 1});       // (x+1)^2
    Poly g = poly_gcd(F, a, b);
    CHECK(g == poly_from(F, {1, 1}));       // monic x + 1
    auto [quo, rem] = poly_divmod(F, poly_mul(F, a, b), a);
    CHECK(quo == b);
    CHECK(rem.is_zero());
    CHECK(poly_exact_div(F, poly_mul(F, a, b), b) == a);
}

TEST_CASE("polynomial helpers") {
    Fq F = Fq::prime_field(3);
    Poly a = poly_from(F, {0, 0, 1, 2}); // x^2 + 2x^3
    CHECK(poly_deg(a) == 3);
    CHECK(poly_valuation(a) == 2);
    CHECK(poly_lc(a) == 2);
    CHECK(poly_eval(F, a, 1) == 0);
    CHECK(poly_derivative(F, a) == poly_from(F, {0, 2})); // 2x + 6x^2 = 2x
    CHECK(poly_monic(F, a) == poly_from(F, {0, 0, 2, 1}));
    // Frobenius coefficient maps invert each other.
    Poly e = poly_frobenius_coeffs(F, a);
    CHECK(poly_pth_root_coeffs(F, e) == a);
}

TEST_CASE("irreducibility and primitivity") {
    Fq F = Fq::prime_field(3);
    CHECK(poly_is_irreducible(F, poly_from(F, {1, 0, 1})));        // x^2 + 1
    CHECK_FALSE(poly_is_irreducible(F, poly_from(F, {2, 0, 1})));  // x^2 - 1
    // x^2 + 1 has x of order 4 < 8: irreducible but not primitive.
    CHECK_FALSE(poly_is_primitive(F, poly_from(F, {1, 0, 1})));
    CHECK(poly_is_primitive(F, poly_from(F, {2, 1, 1})));          // x^2 + x + 2
    Fq F2 = Fq::prime_field(2);
    CHECK(poly_is_primitive(F2, poly_from(F2, {1, 1})));           // x + 1
    CHECK(poly_is_primitive(F2, poly_from(F2, {1, 1, 1})));
    CHECK(poly_is_primitive(F2, poly_from(F2, {1, 1, 0, 1})));     // x^3 + x + 1
}

TEST_CASE("rational functions canonicalize") {
    Fq F = Fq::prime_field(5);
    // (2x^2 - 2) / (4x - 4) = 3(x + 1) after reduction, monic denominator 1.
    RatFunc r = rf_make(F, poly_from(F, {3, 0, 2}), poly_from(F, {1, 4}));
    CHECK(r == rf_from_poly(poly_from(F, {3, 3})));
    // Denominator made monic.
    RatFunc s = rf_make(F, poly_from(F, {1}), poly_from(F, {2, 2}));
    CHECK(s.den == poly_from(F, {1, 1}));
    CHECK(s.num == poly_from(F, {3})); // 1/2 = 3
    CHECK_THROWS_AS(rf_make(F, poly_from(F, {1}), Poly::zero()), UserError);
}

TEST_CASE("rational function field identities") {
    Fq F = Fq::prime_field(7);
    RatFunc a = rf_make(F, poly_from(F, {1, 2}), poly_from(F, {1, 0, 1}));
    RatFunc b = rf_make(F, poly_from(F, {3}), poly_from(F, {1, 1}));
    RatFunc c = rf_make(F, poly_from(F, {0, 0, 5}), poly_from(F, {2, 1}));
    CHECK(rf_mul(F, a, rf_add(F, b, c)) ==
          rf_add(F, rf_mul(F, a, b), rf_mul(F, a, c)));
    CHECK(rf_mul(F, rf_mul(F, a, b), c) == rf_mul(F, a, rf_mul(F, b, c)));
    CHECK(rf_mul(F, a, rf_inv(F, a)) == rf_constant(1));
    CHECK(rf_sub(F, a, a).is_zero());
    CHECK(rf_eval(F, b, 2) == F.div(3, 3));
    CHECK_THROWS_AS(rf_inv(F, rf_constant(0)), UserError);
}

TEST_CASE("linear solving over F_q(x)") {
    Fq F = Fq::prime_field(5);
    RatFunc one = rf_constant(1), zero = rf_constant(0);
    RatFunc x = rf_from_poly(Poly::x());

    SUBCASE("identity system returns the right-hand side") {
        RFMat A{{one, zero}, {zero, one}};
        RFVec b{x, rf_constant(3)};
        auto sol = solve_linear(F, A, b);
        REQUIRE(sol);
        CHECK(*sol == b);
    }
    SUBCASE("1x1 system (x) s = x^2") {
        RFMat A{{x}};
        RFVec b{rf_from_poly(poly_from(F, {0, 0, 1}))};
        auto sol = solve_linear(F, A, b);
        REQUIRE(sol);
        CHECK((*sol)[0] == x);
    }
    SUBCASE("inconsistent 2x1 system") {
        RFMat A{{one}, {zero}};
        RFVec b{zero, one};
        CHECK_FALSE(solve_linear(F, A, b));
    }
    SUBCASE("null space vectors annihilate the matrix") {
        RFMat A{{one, x, rf_from_poly(poly_from(F, {0, 0, 1}))}};
        auto basis = null_space(F, A);
        CHECK(basis.size() == 2);
        for (const auto& v : basis) {
            RatFunc acc = zero;
            for (size_t j = 0; j < v.size(); ++j) acc = rf_add(F, acc, rf_mul(F, A[0][j], v[j]));
            CHECK(acc.is_zero());
        }
        CHECK(rf_rank(F, A) == 1);
    }
    SUBCASE("matrix inverse") {
        RFMat A{{x, one}, {one, one}};
        auto inv = rf_mat_inverse(F, A);
        REQUIRE(inv);
        RFVec e0 = rf_mat_apply(F, *inv, {one, zero});
        RFVec got = rf_mat_apply(F, A, e0);
        CHECK(got[0] == one);
        CHECK(got[1] == zero);
        RFMat sing{{one, one}, {one, one}};
        CHECK_FALSE(rf_mat_inverse(F, sing));
    }
}
