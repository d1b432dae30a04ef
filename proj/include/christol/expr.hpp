#pragma once

#include <string>
#include <vector>

#include "christol/fq.hpp"
#include "christol/poly.hpp"
#include "christol/rational_sweep.hpp"

namespace christol {

// Parses a bivariate polynomial expression over F_q in the variables x and
// T (y is an alias for T), with + - * ^, integer literals, and parentheses.
// Returns dense coefficients by ascending T-degree.  Syntax errors report a
// 1-based character offset.
std::vector<Poly> parse_curve_expr(const Fq& F, const std::string& text);

// Parses a rational function of x with integer coefficients (same grammar
// plus the / operator) for the prime sweep.
RationalSeriesQ parse_rational_expr(const std::string& text);

} // namespace christol
