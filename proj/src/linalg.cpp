#include "christol/linalg.hpp"

#include <algorithm>

namespace christol {

namespace {

using PolyMat = std::vector<std::vector<Poly>>;

// Clears denominators row by row: multiply each row through by the LCM of
// its entries' denominators.  Row scaling does not change solution sets.
PolyMat clear_denominators(const Fq& F, const RFMat& A, const RFVec* b) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    PolyMat M(rows, std::vector<Poly>(cols + (b ? 1 : 0)));
    for (size_t i = 0; i < rows; ++i) {
        Poly lcm = Poly::constant(1);
        auto fold = [&](const RatFunc& e) {
            if (e.is_zero()) return;
            Poly g = poly_gcd(F, lcm, e.den);
            lcm = poly_mul(F, lcm, poly_exact_div(F, e.den, g));
        };
        for (size_t j = 0; j < cols; ++j) fold(A[i][j]);
        if (b) fold((*b)[i]);
        auto scaled = [&](const RatFunc& e) {
            if (e.is_zero()) return Poly::zero();
            return poly_mul(F, e.num, poly_exact_div(F, lcm, e.den));
        };
        for (size_t j = 0; j < cols; ++j) M[i][j] = scaled(A[i][j]);
        if (b) M[i][cols] = scaled((*b)[i]);
    }
    return M;
}

struct Echelon {
    PolyMat M;
    std::vector<size_t> pivot_cols; // one per pivot row, ascending
};

// One-step fraction-free elimination (Bareiss).  After step k every entry is
// a minor of the original matrix bordered on the pivot rows/columns, so the
// division by the previous pivot is exact; rank-deficient columns are
// skipped and recorded.
Echelon fraction_free_echelon(const Fq& F, PolyMat M) {
    size_t rows = M.size();
    size_t cols = rows ? M[0].size() : 0;
    Echelon e;
    Poly prev = Poly::constant(1);
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        // Pick the lowest-degree nonzero pivot candidate to slow degree growth.
        size_t best = rows;
        for (size_t i = row; i < rows; ++i) {
            if (M[i][col].is_zero()) continue;
            if (best == rows || poly_deg(M[i][col]) < poly_deg(M[best][col])) best = i;
        }
        if (best == rows) continue;
        std::swap(M[row], M[best]);
        for (size_t i = row + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                Poly t = poly_sub(F, poly_mul(F, M[row][col], M[i][j]),
                                  poly_mul(F, M[i][col], M[row][j]));
                M[i][j] = t.is_zero() ? Poly::zero() : poly_exact_div(F, t, prev);
            }
            M[i][col] = Poly::zero();
        }
        prev = M[row][col];
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.M = std::move(M);
    return e;
}

// Back-substitution over F_q(x) for an echelon system with the given value
// assigned to every free column.
RFVec back_substitute(const Fq& F, const Echelon& e, size_t ncols,
                      const std::vector<RatFunc>& fixed_free) {
    RFVec x(ncols);
    for (size_t j = 0; j < ncols; ++j) x[j] = fixed_free[j];
    for (size_t k = e.pivot_cols.size(); k-- > 0;) {
        size_t pc = e.pivot_cols[k];
        RatFunc acc = rf_from_poly(e.M[k].back()); // rhs column (last)
        for (size_t j = pc + 1; j + 1 < e.M[k].size(); ++j) {
            if (e.M[k][j].is_zero() || x[j].is_zero()) continue;
            acc = rf_sub(F, acc, rf_mul(F, rf_from_poly(e.M[k][j]), x[j]));
        }
        x[pc] = rf_div(F, acc, rf_from_poly(e.M[k][pc]));
    }
    return x;
}

} // namespace

std::optional<RFVec> solve_linear(const Fq& F, const RFMat& A, const RFVec& b) {
    size_t rows = A.size();
    if (b.size() != rows) throw UserError("solve_linear: shape mismatch");
    size_t cols = rows ? A[0].size() : 0;
    for (const auto& r : A)
        if (r.size() != cols) throw UserError("solve_linear: ragged matrix");
    if (rows == 0) return RFVec(cols);

    Echelon e = fraction_free_echelon(F, clear_denominators(F, A, &b));
    // Inconsistent iff some pivot lands in the appended rhs column, i.e. a
    // zero row of A carries a nonzero rhs.
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) return std::nullopt;
    size_t prow = e.pivot_cols.size();
    for (size_t i = prow; i < rows; ++i)
        if (!e.M[i][cols].is_zero()) return std::nullopt;

    return back_substitute(F, e, cols, RFVec(cols));
}

std::vector<RFVec> null_space(const Fq& F, const RFMat& A) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    if (rows == 0 || cols == 0) return {};
    PolyMat M = clear_denominators(F, A, nullptr);
    // Append a zero rhs column so back_substitute can be reused unchanged.
    for (auto& r : M) r.push_back(Poly::zero());
    Echelon e = fraction_free_echelon(F, std::move(M));

    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivot_cols)
        if (c < cols) is_pivot[c] = true;
    std::vector<RFVec> basis;
    for (size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        RFVec fixed(cols);
        fixed[j] = rf_constant(1);
        basis.push_back(back_substitute(F, e, cols, fixed));
    }
    return basis;
}

unsigned rf_rank(const Fq& F, const RFMat& A) {
    if (A.empty()) return 0;
    Echelon e = fraction_free_echelon(F, clear_denominators(F, A, nullptr));
    return (unsigned)e.pivot_cols.size();
}

std::optional<RFMat> rf_mat_inverse(const Fq& F, const RFMat& A) {
    size_t n = A.size();
    for (const auto& r : A)
        if (r.size() != n) throw UserError("rf_mat_inverse: not square");
    RFMat M = A;
    RFMat I(n, RFVec(n));
    for (size_t i = 0; i < n; ++i) I[i][i] = rf_constant(1);

    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t i = col; i < n; ++i)
            if (!M[i][col].is_zero()) { piv = i; break; }
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(I[piv], I[col]);
        RatFunc pinv = rf_inv(F, M[col][col]);
        for (size_t j = 0; j < n; ++j) {
            M[col][j] = rf_mul(F, M[col][j], pinv);
            I[col][j] = rf_mul(F, I[col][j], pinv);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col].is_zero()) continue;
            RatFunc f = M[i][col];
            for (size_t j = 0; j < n; ++j) {
                if (!M[col][j].is_zero())
                    M[i][j] = rf_sub(F, M[i][j], rf_mul(F, f, M[col][j]));
                if (!I[col][j].is_zero())
                    I[i][j] = rf_sub(F, I[i][j], rf_mul(F, f, I[col][j]));
            }
        }
    }
    return I;
}

RFVec rf_mat_apply(const Fq& F, const RFMat& A, const RFVec& v) {
    RFVec out(A.size());
    for (size_t i = 0; i < A.size(); ++i) {
        RatFunc acc;
        for (size_t j = 0; j < v.size(); ++j) {
            if (A[i][j].is_zero() || v[j].is_zero()) continue;
            acc = rf_add(F, acc, rf_mul(F, A[i][j], v[j]));
        }
        out[i] = acc;
    }
    return out;
}

} // namespace christol
