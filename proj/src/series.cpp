#include "christol/series.hpp"

#include <algorithm>

namespace christol {

TruncSeries ts_from(const Fq& F, std::vector<fq_t> coeffs) {
    for (auto v : coeffs)
        if (!F.is_valid(v)) throw UserError("series coefficient out of range for field");
    return TruncSeries{std::move(coeffs)};
}

TruncSeries ts_of_poly(const Poly& p, int prec) {
    if (prec < 0) throw UserError("negative precision");
    TruncSeries s;
    s.c.assign((size_t)prec, 0);
    for (size_t i = 0; i < p.c.size() && i < (size_t)prec; ++i) s.c[i] = p.c[i];
    return s;
}

TruncSeries ts_truncate(const TruncSeries& s, int prec) {
    if (prec < 0) throw UserError("negative precision");
    TruncSeries out = s;
    if ((int)out.c.size() > prec) out.c.resize((size_t)prec);
    return out;
}

TruncSeries ts_add(const Fq& F, const TruncSeries& a, const TruncSeries& b) {
    size_t n = std::min(a.c.size(), b.c.size());
    TruncSeries out;
    out.c.resize(n);
    for (size_t i = 0; i < n; ++i) out.c[i] = F.add(a.c[i], b.c[i]);
    return out;
}

TruncSeries ts_sub(const Fq& F, const TruncSeries& a, const TruncSeries& b) {
    size_t n = std::min(a.c.size(), b.c.size());
    TruncSeries out;
    out.c.resize(n);
    for (size_t i = 0; i < n; ++i) out.c[i] = F.sub(a.c[i], b.c[i]);
    return out;
}

TruncSeries ts_scale(const Fq& F, const TruncSeries& a, fq_t s) {
    TruncSeries out = a;
    for (auto& v : out.c) v = F.mul(v, s);
    return out;
}

TruncSeries ts_mul(const Fq& F, const TruncSeries& a, const TruncSeries& b) {
    size_t n = std::min(a.c.size(), b.c.size());
    TruncSeries out;
    out.c.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; i + j < n; ++j) {
            if (b.c[j] == 0) continue;
            out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
        }
    }
    return out;
}

TruncSeries ts_inv(const Fq& F, const TruncSeries& a, int prec) {
    if (a.precision() < 1 || a.c[0] == 0)
        throw UserError("series inverse requires a unit constant term");
    if (prec > a.precision())
        throw UserError("series inverse requested beyond known precision");
    TruncSeries out;
    out.c.assign((size_t)prec, 0);
    fq_t c0inv = F.inv(a.c[0]);
    out.c[0] = c0inv;
    for (size_t n = 1; n < (size_t)prec; ++n) {
        fq_t acc = 0;
        for (size_t k = 1; k <= n; ++k) {
            if (a.c[k] == 0 || out.c[n - k] == 0) continue;
            acc = F.add(acc, F.mul(a.c[k], out.c[n - k]));
        }
        out.c[n] = F.neg(F.mul(acc, c0inv));
    }
    return out;
}

namespace {

// f and df/dT evaluated at a series, all at fixed working precision.
TruncSeries eval_f_series(const Fq& F, const std::vector<Poly>& fj,
                          const TruncSeries& s, int prec) {
    TruncSeries acc;
    acc.c.assign((size_t)prec, 0);
    for (size_t j = fj.size(); j-- > 0;) {
        acc = ts_mul(F, acc, s);
        acc.c.resize((size_t)prec, 0);
        acc = ts_add(F, acc, ts_of_poly(fj[j], prec));
    }
    return acc;
}

TruncSeries eval_ft_series(const Fq& F, const std::vector<Poly>& fj,
                           const TruncSeries& s, int prec) {
    TruncSeries acc;
    acc.c.assign((size_t)prec, 0);
    for (size_t j = fj.size(); j-- > 1;) {
        acc = ts_mul(F, acc, s);
        acc.c.resize((size_t)prec, 0);
        Poly scaled = poly_scale(F, fj[j], F.from_int((std::int64_t)(j % F.p())));
        acc = ts_add(F, acc, ts_of_poly(scaled, prec));
    }
    return acc;
}

} // namespace

TruncSeries ts_eval_curve(const PlaneCurve& curve, const TruncSeries& s, int prec) {
    if (prec < 1) throw UserError("precision must be at least 1");
    return eval_f_series(curve.field(), curve.coeffs(), s, prec);
}

TruncSeries hensel_expand(const PlaneCurve& curve, fq_t a0, int N) {
    const Fq& F = curve.field();
    if (N < 1) throw UserError("precision must be at least 1");
    if (!F.is_valid(a0)) throw UserError("a0 is not a field element");
    const auto& fj = curve.coeffs();

    fq_t f0 = 0, ft0 = 0;
    for (size_t j = fj.size(); j-- > 0;) {
        f0 = F.add(F.mul(f0, a0), poly_eval(F, fj[j], 0));
        if (j >= 1) {
            fq_t der = F.mul(poly_eval(F, fj[j], 0), F.from_int((std::int64_t)(j % F.p())));
            ft0 = F.add(F.mul(ft0, a0), der);
        }
    }
    if (f0 != 0) throw UserError("a0 is not a root of f(0, T)");
    if (ft0 == 0) throw UserError("a0 is not a simple root of f(0, T); branch expansion needs f_T(0, a0) != 0");

    TruncSeries s;
    s.c = {a0};
    int prec = 1;
    while (prec < N) {
        int next = std::min(2 * prec, N);
        s.c.resize((size_t)next, 0);
        TruncSeries num = eval_f_series(F, fj, s, next);
        TruncSeries den = eval_ft_series(F, fj, s, next);
        TruncSeries corr = ts_mul(F, num, ts_inv(F, den, next));
        s = ts_sub(F, s, corr);
        prec = next;
    }
    TruncSeries residue = eval_f_series(F, fj, s, N);
    for (auto v : residue.c)
        if (v != 0) throw InternalError("Newton iteration failed to annihilate f to precision");
    return s;
}

TruncSeries trunc_lambda(const Fq& F, unsigned i, const TruncSeries& s) {
    if (i >= F.p()) throw UserError("trunc_lambda digit out of range");
    int prec = s.precision();
    if (prec < (int)i + 1)
        throw ComputeRefusal("trunc_lambda: insufficient precision for even one output coefficient");
    int out_prec = (prec - (int)i - 1) / (int)F.p() + 1;
    TruncSeries out;
    out.c.resize((size_t)out_prec);
    for (int n = 0; n < out_prec; ++n)
        out.c[(size_t)n] = F.pth_root(s.c[(size_t)((std::uint64_t)n * F.p() + i)]);
    return out;
}

TruncSeries ts_decimate(unsigned long long b, unsigned long long c, const TruncSeries& s) {
    if (c >= b) throw UserError("decimation digit out of range");
    int prec = s.precision();
    if ((unsigned long long)prec < c + 1)
        throw ComputeRefusal("decimation: insufficient precision for even one output coefficient");
    unsigned long long out_prec = ((unsigned long long)prec - c - 1) / b + 1;
    TruncSeries out;
    out.c.resize((size_t)out_prec);
    for (unsigned long long n = 0; n < out_prec; ++n) out.c[(size_t)n] = s.c[(size_t)(n * b + c)];
    return out;
}

TruncSeries ts_of_ratfunc(const Fq& F, const RatFunc& r, int prec) {
    if (prec < 0) throw UserError("negative precision");
    if (r.is_zero()) {
        TruncSeries out;
        out.c.assign((size_t)prec, 0);
        return out;
    }
    if (poly_eval(F, r.den, 0) == 0)
        throw UserError("rational function has a pole at the origin");
    TruncSeries num = ts_of_poly(r.num, prec);
    TruncSeries den = ts_of_poly(r.den, prec);
    return ts_mul(F, num, ts_inv(F, den, prec));
}

TruncSeries ff_to_series(const PlaneCurve& curve, const TruncSeries& branch,
                         const FFElem& u, int N) {
    const Fq& F = curve.field();
    if (N < 1) throw UserError("precision must be at least 1");
    // Pole margin: largest power of x dividing any coordinate denominator.
    // Coordinates are canonical, so a positive valuation is a genuine
    // coordinate pole; those may still cancel across the basis.
    int margin = 0;
    for (const auto& co : u.coords)
        if (!co.is_zero()) margin = std::max(margin, (int)poly_valuation(co.den));
    int work = N + margin;
    if (branch.precision() < work)
        throw UserError("insufficient branch precision: need " + std::to_string(work) +
                        " coefficients, have " + std::to_string(branch.precision()));

    // Accumulate x^margin * u in an ordinary power-series buffer.
    TruncSeries acc;
    acc.c.assign((size_t)work, 0);
    TruncSeries ypow;
    ypow.c.assign((size_t)work, 0);
    ypow.c[0] = 1;
    TruncSeries br = ts_truncate(branch, work);
    for (size_t cidx = 0; cidx < u.coords.size(); ++cidx) {
        const RatFunc& co = u.coords[cidx];
        if (!co.is_zero()) {
            unsigned v = poly_valuation(co.den);
            Poly den_shifted = co.den;
            den_shifted.c.erase(den_shifted.c.begin(), den_shifted.c.begin() + v);
            // x^margin * co = x^{margin-v} * num / den_shifted with den_shifted(0) != 0
            TruncSeries num = ts_of_poly(poly_shift(co.num, (unsigned)margin - v), work);
            TruncSeries coeff = ts_mul(F, num, ts_inv(F, ts_of_poly(den_shifted, work), work));
            acc = ts_add(F, acc, ts_mul(F, coeff, ypow));
            acc.c.resize((size_t)work, 0);
        }
        if (cidx + 1 < u.coords.size()) {
            ypow = ts_mul(F, ypow, br);
            ypow.c.resize((size_t)work, 0);
        }
    }
    for (int k = 0; k < margin; ++k)
        if (acc.c[(size_t)k] != 0)
            throw UserError("element has a pole at the origin along this branch");
    TruncSeries out;
    out.c.assign(acc.c.begin() + margin, acc.c.end());
    return out;
}

fq_t ff_const_term(const PlaneCurve& curve, const TruncSeries& branch, const FFElem& u) {
    return ff_to_series(curve, branch, u, 1).c[0];
}

} // namespace christol
