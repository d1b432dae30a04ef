#pragma once

#include "christol/curve.hpp"

namespace christol {

// Truncated power series over F_q; the stored length is the precision (the
// first precision() coefficients are known exactly).
struct TruncSeries {
    std::vector<fq_t> c;

    int precision() const { return (int)c.size(); }
    fq_t at(size_t n) const { return n < c.size() ? c[n] : 0; }
    bool operator==(const TruncSeries& o) const { return c == o.c; }
};

TruncSeries ts_from(const Fq& F, std::vector<fq_t> coeffs);
TruncSeries ts_of_poly(const Poly& p, int prec);
// Power series of num/den; requires den(0) != 0.
TruncSeries ts_of_ratfunc(const Fq& F, const RatFunc& r, int prec);
TruncSeries ts_truncate(const TruncSeries& s, int prec);

// Arithmetic at the minimum of the operand precisions.
TruncSeries ts_add(const Fq& F, const TruncSeries& a, const TruncSeries& b);
TruncSeries ts_sub(const Fq& F, const TruncSeries& a, const TruncSeries& b);
TruncSeries ts_mul(const Fq& F, const TruncSeries& a, const TruncSeries& b);
TruncSeries ts_scale(const Fq& F, const TruncSeries& a, fq_t s);
// Multiplicative inverse to the given precision; requires a(0) != 0.
TruncSeries ts_inv(const Fq& F, const TruncSeries& a, int prec);

// Branch expansion by Newton iteration with precision doubling.  Requires a
// simple residue root: f(0, a0) = 0 and f_T(0, a0) != 0.  The result is
// verified to satisfy f(x, s) = 0 mod x^N before it is returned.
TruncSeries hensel_expand(const PlaneCurve& curve, fq_t a0, int N);

// f(x, s) truncated to the given precision.  A truncation of a true branch
// gives the zero series; anything else leaves a nonzero residue.
TruncSeries ts_eval_curve(const PlaneCurve& curve, const TruncSeries& s, int prec);

// sum a(pn+i)^{1/p} x^n with output precision floor((prec-i-1)/p) + 1;
// refuses when not even one output coefficient is known.
TruncSeries trunc_lambda(const Fq& F, unsigned i, const TruncSeries& s);

// Plain base-b decimation n -> a(bn+c) (the b-kernel map for sequences with
// values fixed by b-th roots, e.g. b = q over F_q).
TruncSeries ts_decimate(unsigned long long b, unsigned long long c, const TruncSeries& s);

// Series of u along the given branch.  Handles coordinates with poles at the
// origin through a Laurent buffer and insists the principal part cancels;
// requires branch precision N plus the pole margin.
TruncSeries ff_to_series(const PlaneCurve& curve, const TruncSeries& branch,
                         const FFElem& u, int N);

// Constant term of u along the branch (= ff_to_series(..., 1) coefficient 0).
fq_t ff_const_term(const PlaneCurve& curve, const TruncSeries& branch, const FFElem& u);

} // namespace christol
