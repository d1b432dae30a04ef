#pragma once

#include <optional>
#include <vector>

#include "christol/ratfunc.hpp"

namespace christol {

using RFVec = std::vector<RatFunc>;
using RFMat = std::vector<std::vector<RatFunc>>;

// Solves A x = b over F_q(x).  Returns nullopt when the system is
// inconsistent; free variables (if any) are set to zero.  Internally clears
// denominators row by row and runs one-step fraction-free (Bareiss)
// elimination over F_q[x], so intermediate entries stay polynomial minors
// and every division is exact.
std::optional<RFVec> solve_linear(const Fq& F, const RFMat& A, const RFVec& b);

// Basis of the right null space of A, same elimination core.  Each basis
// vector has a 1 in one free column.
std::vector<RFVec> null_space(const Fq& F, const RFMat& A);

// Rank via the same fraction-free echelon pass.
unsigned rf_rank(const Fq& F, const RFMat& A);

// Inverse of a square matrix over F_q(x), or nullopt if singular.
// Gauss-Jordan with canonical (gcd-reduced) rational entries; used for
// per-curve caches where the factored system is applied many times.
std::optional<RFMat> rf_mat_inverse(const Fq& F, const RFMat& A);

RFVec rf_mat_apply(const Fq& F, const RFMat& A, const RFVec& v);

} // namespace christol
