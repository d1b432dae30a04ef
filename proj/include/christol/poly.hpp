#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "christol/fq.hpp"

namespace christol {

// Dense univariate polynomial over F_q.  Invariant: no trailing zero
// coefficients; the zero polynomial is the empty vector and reports degree
// through the POLY_DEG_ZERO sentinel.
struct Poly {
    std::vector<fq_t> c; // c[i] is the coefficient of x^i

    static Poly zero() { return {}; }
    static Poly constant(fq_t a) { return a == 0 ? Poly{} : Poly{{a}}; }
    static Poly x() { return Poly{{0, 1}}; }

    bool is_zero() const { return c.empty(); }
    bool operator==(const Poly& o) const { return c == o.c; }
};

inline constexpr int POLY_DEG_ZERO = -1;

inline int poly_deg(const Poly& a) { return (int)a.c.size() - 1; }

void poly_trim(Poly& a);
Poly poly_from(const Fq& F, std::vector<fq_t> coeffs); // reduces nothing, trims
fq_t poly_lc(const Poly& a);

Poly poly_add(const Fq& F, const Poly& a, const Poly& b);
Poly poly_sub(const Fq& F, const Poly& a, const Poly& b);
Poly poly_neg(const Fq& F, const Poly& a);
Poly poly_mul(const Fq& F, const Poly& a, const Poly& b);
Poly poly_scale(const Fq& F, const Poly& a, fq_t s);
Poly poly_shift(const Poly& a, unsigned k); // multiply by x^k
Poly poly_pow(const Fq& F, const Poly& a, std::uint64_t e);

// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b);
// Division known to be exact; throws InternalError on a nonzero remainder.
Poly poly_exact_div(const Fq& F, const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Fq& F, const Poly& a, const Poly& b);
Poly poly_monic(const Fq& F, const Poly& a);
Poly poly_derivative(const Fq& F, const Poly& a);
fq_t poly_eval(const Fq& F, const Poly& a, fq_t x0);

// Largest k with x^k | a (0 for a = 0 by convention).
unsigned poly_valuation(const Poly& a);

// E with a(x)^p = E(x^p): coefficients raised to the p-th power, exponents
// kept.  The inverse direction takes p-th roots of the coefficients.
Poly poly_frobenius_coeffs(const Fq& F, const Poly& a);
Poly poly_pth_root_coeffs(const Fq& F, const Poly& a);

bool poly_is_irreducible(const Fq& F, const Poly& a);
// Irreducible and x generates the multiplicative group of F_q[x]/(a).
bool poly_is_primitive(const Fq& F, const Poly& a);

std::string poly_to_string(const Fq& F, const Poly& a, const std::string& var = "x");

} // namespace christol
