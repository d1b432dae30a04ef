#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "christol/fq.hpp"

namespace christol {

using ZInt = boost::multiprecision::cpp_int;
using ZRat = boost::multiprecision::cpp_rational;

// Dense integer-coefficient polynomial, no trailing zeros (like Poly).
using ZPoly = std::vector<ZInt>;

int zp_deg(const ZPoly& a);
void zp_trim(ZPoly& a);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_add(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
ZPoly zp_neg(const ZPoly& a);
ZPoly zp_derivative(const ZPoly& a);
std::string zp_to_string(const ZPoly& a, const std::string& var = "x");

// Rational power series num/den over the rationals, den(0) != 0, stored
// with coprime primitive integer polynomials (den leading coefficient
// positive).
struct RationalSeriesQ {
    ZPoly num;
    ZPoly den;
};

// Canonicalizes and validates (den nonzero, den(0) != 0, gcd 1 over Q).
RationalSeriesQ make_rational_series(ZPoly num, ZPoly den);

enum class Boundedness { Bounded, Unbounded };

// Bounded iff the coefficient sequence of the series is bounded: the
// denominator must be squarefree with all roots on the unit circle at
// roots of unity, tested exactly via den | x^L - 1 with L = lcm of all m
// with phi(m) <= deg den.
Boundedness classify_bounded(const RationalSeriesQ& y);

struct SweepRow {
    std::uint64_t p = 0;
    std::optional<std::uint64_t> n_p; // empty when skipped
    std::string skipped_reason;       // empty when computed
};

struct SweepResult {
    Boundedness verdict = Boundedness::Unbounded;
    std::vector<SweepRow> rows;
};

// Reduces the series modulo each admissible prime, enumerates the p-kernel
// of the reduction, and records its size.  Primes dividing den(0) or the
// leading coefficient of den are marked skipped.  Throws UserError when no
// prime in the list is admissible.
SweepResult prime_sweep(const RationalSeriesQ& y, const std::vector<std::uint64_t>& primes,
                        std::uint64_t max_states = 1000000);

// First n coefficients over Q, reduced modulo the field characteristic.
// Requires the characteristic to be admissible for y.
std::vector<fq_t> qseries_mod_p(const Fq& F, const RationalSeriesQ& y, int n);

std::string sweep_text(const SweepResult& r);
std::string sweep_json(const SweepResult& r);

} // namespace christol
