#include "christol/curve.hpp"

#include <algorithm>
#include <sstream>

namespace christol {

namespace {

// Polynomials in T with coefficients in F_q(x), used for the separability
// check and extended Euclid behind inversion.
using TPoly = std::vector<RatFunc>;

void tp_trim(TPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int tp_deg(const TPoly& a) { return (int)a.size() - 1; }

TPoly tp_sub(const Fq& F, const TPoly& a, const TPoly& b) {
    TPoly out = a;
    if (out.size() < b.size()) out.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) out[i] = rf_sub(F, out[i], b[i]);
    tp_trim(out);
    return out;
}

TPoly tp_mul(const Fq& F, const TPoly& a, const TPoly& b) {
    if (a.empty() || b.empty()) return {};
    TPoly out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] = rf_add(F, out[i + j], rf_mul(F, a[i], b[j]));
        }
    }
    tp_trim(out);
    return out;
}

std::pair<TPoly, TPoly> tp_divmod(const Fq& F, TPoly a, const TPoly& b) {
    tp_trim(a);
    if (b.empty()) throw UserError("T-polynomial division by zero");
    TPoly quot;
    if (a.size() >= b.size()) quot.resize(a.size() - b.size() + 1);
    RatFunc lcinv = rf_inv(F, b.back());
    while (a.size() >= b.size()) {
        RatFunc c = rf_mul(F, a.back(), lcinv);
        size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = rf_sub(F, a[shift + i], rf_mul(F, c, b[i]));
        // The leading term cancels exactly; trim defensively.
        tp_trim(a);
        if (a.size() >= shift + b.size()) throw InternalError("tp_divmod failed to reduce degree");
    }
    tp_trim(quot);
    return {quot, a};
}

TPoly tp_gcd(const Fq& F, TPoly a, TPoly b) {
    tp_trim(a);
    tp_trim(b);
    while (!b.empty()) {
        TPoly r = tp_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        RatFunc lcinv = rf_inv(F, a.back());
        for (auto& c : a) c = rf_mul(F, c, lcinv);
    }
    return a;
}

std::string tp_to_string(const Fq& F, const TPoly& a) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << rf_to_string(F, a[i]) << ")";
        if (i >= 1) {
            os << "*T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// Maps a rational function in the compressed variable back through the
// inverse Frobenius: z^k -> x^k with p-th roots of all coefficients.  This is
// a ring isomorphism, so canonical form is preserved.
RatFunc rf_unfrobenius(const Fq& F, const RatFunc& g) {
    RatFunc out;
    out.num = poly_pth_root_coeffs(F, g.num);
    out.den = poly_pth_root_coeffs(F, g.den);
    return out;
}

} // namespace

std::vector<RatFunc> rf_frobenius_split(const Fq& F, const RatFunc& g) {
    unsigned p = (unsigned)F.p();
    std::vector<RatFunc> out(p);
    if (g.is_zero()) return out;
    // 1/e = e^{p-1} / e^p and e(x)^p = E(x^p), so g = n e^{p-1} / E(x^p);
    // the numerator splits by exponent residue.
    Poly ehat = poly_pow(F, g.den, F.p() - 1);
    Poly E = poly_frobenius_coeffs(F, g.den);
    Poly num2 = poly_mul(F, g.num, ehat);
    for (unsigned a = 0; a < p; ++a) {
        Poly slice;
        for (size_t k = a; k < num2.c.size(); k += p)
            slice.c.push_back(num2.c[k]);
        poly_trim(slice);
        out[a] = rf_make(F, std::move(slice), E);
    }
    return out;
}

PlaneCurve::PlaneCurve(Fq F, std::vector<Poly> coeffs_by_tdeg) : F_(std::move(F)) {
    fj_ = std::move(coeffs_by_tdeg);
    while (!fj_.empty() && fj_.back().is_zero()) fj_.pop_back();
    if (fj_.size() < 2)
        throw UserError("curve polynomial must have positive degree in T");
    d_ = (int)fj_.size() - 1;
    h_ = 0;
    for (const auto& f : fj_) h_ = std::max(h_, poly_deg(f));
    if (h_ < 0) h_ = 0;

    // Separability in T: gcd(f, df/dT) must have T-degree 0.
    TPoly f(fj_.size()), ft;
    for (size_t j = 0; j < fj_.size(); ++j) f[j] = rf_from_poly(fj_[j]);
    ft.resize(fj_.size() - 1);
    for (size_t j = 1; j < fj_.size(); ++j)
        ft[j - 1] = rf_scale(F_, rf_from_poly(fj_[j]), F_.from_int((std::int64_t)(j % F_.p())));
    tp_trim(ft);
    TPoly g = tp_gcd(F_, f, ft);
    if (tp_deg(g) != 0)
        throw UserError("curve is not separable in T (gcd(f, f_T) = " + tp_to_string(F_, g) + ")");

    build_ypow();
    build_kp_system();
}

void PlaneCurve::build_ypow() {
    unsigned maxpow = std::max<unsigned>(2 * (unsigned)d_ - 2,
                                         (unsigned)F_.p() * (unsigned)(d_ - 1));
    ypow_.clear();
    ypow_.reserve(maxpow + 1);
    std::vector<RatFunc> cur(d_);
    cur[0] = rf_constant(1);
    ypow_.push_back(cur);
    if (d_ == 1) {
        // K = F_q(x); y itself is -f_0/f_1 and no reduction is ever needed.
        return;
    }
    RatFunc lead_inv = rf_inv(F_, rf_from_poly(fj_[d_]));
    for (unsigned k = 1; k <= maxpow; ++k) {
        std::vector<RatFunc> next(d_);
        // multiply by y: shift up, then fold y^d = -(1/f_d) sum_{j<d} f_j y^j
        RatFunc top = cur[d_ - 1];
        for (int i = d_ - 1; i >= 1; --i) next[i] = cur[i - 1];
        next[0] = RatFunc{};
        if (!top.is_zero()) {
            RatFunc s = rf_neg(F_, rf_mul(F_, top, lead_inv));
            for (int j = 0; j < d_; ++j) {
                if (fj_[j].is_zero()) continue;
                next[j] = rf_add(F_, next[j], rf_mul(F_, s, rf_from_poly(fj_[j])));
            }
        }
        ypow_.push_back(next);
        cur = ypow_.back();
    }
}

void PlaneCurve::build_kp_system() {
    unsigned p = (unsigned)F_.p();
    unsigned dim = p * (unsigned)d_;
    // Columns: x^a (y^p)^b over the basis x^a y^c with coefficients in
    // F_q(x^p) (written in a compressed variable).  G_b = y^{pb} comes from
    // the power cache.
    RFMat M(dim, RFVec(dim));
    for (unsigned b = 0; b < (unsigned)d_; ++b) {
        const std::vector<RatFunc>& G =
            (d_ == 1) ? ypow_[0] : ypow_[p * b];
        for (unsigned c = 0; c < (unsigned)d_; ++c) {
            if (G[c].is_zero()) continue;
            std::vector<RatFunc> slices = rf_frobenius_split(F_, G[c]);
            for (unsigned a = 0; a < p; ++a) {
                for (unsigned ap = 0; ap < p; ++ap) {
                    if (slices[ap].is_zero()) continue;
                    unsigned s = a + ap;
                    RatFunc entry = slices[ap];
                    unsigned row_a = s;
                    if (s >= p) {
                        row_a = s - p;
                        entry = rf_mul(F_, entry, rf_from_poly(Poly::x())); // times z
                    }
                    unsigned row = row_a + p * c;
                    unsigned col = a + p * b;
                    M[row][col] = rf_add(F_, M[row][col], entry);
                }
            }
        }
    }
    auto inv = rf_mat_inverse(F_, M);
    if (!inv)
        throw InternalError("K^p basis change is singular despite separability");
    kp_inv_ = std::move(*inv);
}

FFElem PlaneCurve::zero() const { return FFElem{std::vector<RatFunc>((size_t)d_)}; }

FFElem PlaneCurve::one() const {
    FFElem e = zero();
    e.coords[0] = rf_constant(1);
    return e;
}

FFElem PlaneCurve::gen() const {
    FFElem e = zero();
    if (d_ == 1) {
        e.coords[0] = rf_neg(F_, rf_div(F_, rf_from_poly(fj_[0]), rf_from_poly(fj_[1])));
    } else {
        e.coords[1] = rf_constant(1);
    }
    return e;
}

FFElem PlaneCurve::from_ratfunc(RatFunc r) const {
    FFElem e = zero();
    e.coords[0] = std::move(r);
    return e;
}

FFElem PlaneCurve::from_coords(std::vector<RatFunc> coords) const {
    if ((int)coords.size() != d_) throw UserError("coordinate vector has wrong length");
    return FFElem{std::move(coords)};
}

bool PlaneCurve::is_zero(const FFElem& a) const {
    for (const auto& c : a.coords)
        if (!c.is_zero()) return false;
    return true;
}

FFElem PlaneCurve::add(const FFElem& a, const FFElem& b) const {
    FFElem out = zero();
    for (int i = 0; i < d_; ++i) out.coords[i] = rf_add(F_, a.coords[i], b.coords[i]);
    return out;
}

FFElem PlaneCurve::neg(const FFElem& a) const {
    FFElem out = a;
    for (auto& c : out.coords) c = rf_neg(F_, c);
    return out;
}

FFElem PlaneCurve::sub(const FFElem& a, const FFElem& b) const { return add(a, neg(b)); }

FFElem PlaneCurve::reduce_tpoly(std::vector<RatFunc> tp) const {
    FFElem out = zero();
    for (size_t k = 0; k < tp.size(); ++k) {
        if (tp[k].is_zero()) continue;
        if (k < (size_t)d_) {
            out.coords[k] = rf_add(F_, out.coords[k], tp[k]);
        } else {
            const auto& pw = ypow_[k];
            for (int i = 0; i < d_; ++i) {
                if (pw[i].is_zero()) continue;
                out.coords[i] = rf_add(F_, out.coords[i], rf_mul(F_, tp[k], pw[i]));
            }
        }
    }
    return out;
}

FFElem PlaneCurve::mul(const FFElem& a, const FFElem& b) const {
    std::vector<RatFunc> conv(2 * (size_t)d_ - 1);
    for (int i = 0; i < d_; ++i) {
        if (a.coords[i].is_zero()) continue;
        for (int j = 0; j < d_; ++j) {
            if (b.coords[j].is_zero()) continue;
            conv[i + j] = rf_add(F_, conv[i + j], rf_mul(F_, a.coords[i], b.coords[j]));
        }
    }
    return reduce_tpoly(std::move(conv));
}

FFElem PlaneCurve::mul_scalar(const FFElem& a, const RatFunc& s) const {
    FFElem out = zero();
    if (s.is_zero()) return out;
    for (int i = 0; i < d_; ++i)
        if (!a.coords[i].is_zero()) out.coords[i] = rf_mul(F_, a.coords[i], s);
    return out;
}

FFElem PlaneCurve::inv(const FFElem& a) const {
    if (is_zero(a)) throw UserError("inverting zero in the function field");
    // Extended Euclid in F_q(x)[T] between a and f: s*a + t*f = g.
    TPoly f((size_t)d_ + 1);
    for (int j = 0; j <= d_; ++j) f[j] = rf_from_poly(fj_[j]);
    TPoly r0 = f;
    TPoly r1 = a.coords;
    tp_trim(r1);
    TPoly s0, s1 = {rf_constant(1)};
    while (!r1.empty() && tp_deg(r1) > 0) {
        auto [q, r2] = tp_divmod(F_, r0, r1);
        TPoly s2 = tp_sub(F_, s0, tp_mul(F_, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) {
        // gcd(a, f) = r0 is a proper factor of f: the curve was reducible.
        throw NotInvertible("element is a zero divisor; curve polynomial factors as gcd = " +
                                tp_to_string(F_, r0),
                            tp_to_string(F_, r0));
    }
    // r1 is a nonzero constant g; inverse = s1 / g reduced into the basis.
    RatFunc ginv = rf_inv(F_, r1[0]);
    std::vector<RatFunc> inv_coords(s1.size());
    for (size_t i = 0; i < s1.size(); ++i) inv_coords[i] = rf_mul(F_, s1[i], ginv);
    return reduce_tpoly(std::move(inv_coords));
}

FFElem PlaneCurve::eval_f(const FFElem& a) const {
    FFElem acc = zero();
    for (size_t j = fj_.size(); j-- > 0;) {
        acc = mul(acc, a);
        acc.coords[0] = rf_add(F_, acc.coords[0], rf_from_poly(fj_[j]));
    }
    return acc;
}

std::vector<FFElem> PlaneCurve::kp_decompose(const FFElem& u) const {
    unsigned p = (unsigned)F_.p();
    unsigned dim = p * (unsigned)d_;
    RFVec rhs(dim);
    for (unsigned c = 0; c < (unsigned)d_; ++c) {
        if (u.coords[c].is_zero()) continue;
        std::vector<RatFunc> slices = rf_frobenius_split(F_, u.coords[c]);
        for (unsigned a = 0; a < p; ++a) rhs[a + p * c] = std::move(slices[a]);
    }
    RFVec W = rf_mat_apply(F_, kp_inv_, rhs);
    std::vector<FFElem> v((size_t)p, zero());
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = 0; b < (unsigned)d_; ++b) {
            const RatFunc& w = W[a + p * b];
            if (!w.is_zero()) v[a].coords[b] = rf_unfrobenius(F_, w);
        }
    return v;
}

FFElem PlaneCurve::lambda_p(unsigned i, const FFElem& u) const {
    if (i >= F_.p()) throw UserError("lambda_p digit out of range");
    return kp_decompose(u)[i];
}

FFElem PlaneCurve::lambda_q(std::uint64_t c, const FFElem& u) const {
    if (c >= F_.q()) throw UserError("lambda_q digit out of range");
    FFElem cur = u;
    for (unsigned k = 0; k < F_.r(); ++k) {
        cur = lambda_p((unsigned)(c % F_.p()), cur);
        c /= F_.p();
    }
    return cur;
}

std::vector<FFElem> PlaneCurve::lambda_all(const FFElem& u, unsigned levels) const {
    std::vector<FFElem> cur = {u};
    std::uint64_t stride = 1;
    for (unsigned k = 0; k < levels; ++k) {
        std::vector<FFElem> next(cur.size() * F_.p(), zero());
        for (size_t m = 0; m < cur.size(); ++m) {
            std::vector<FFElem> children = kp_decompose(cur[m]);
            for (unsigned j = 0; j < F_.p(); ++j)
                next[m + j * stride] = std::move(children[j]);
        }
        cur = std::move(next);
        stride *= F_.p();
    }
    return cur;
}

std::string PlaneCurve::canonical_key(const FFElem& a) const {
    std::string key;
    auto put_poly = [&](const Poly& p) {
        key += std::to_string(p.c.size());
        key += ':';
        for (auto v : p.c) {
            key += std::to_string(v);
            key += ',';
        }
    };
    for (const auto& c : a.coords) {
        put_poly(c.num);
        key += '/';
        put_poly(c.den);
        key += ';';
    }
    return key;
}

std::string PlaneCurve::describe() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = fj_.size(); j-- > 0;) {
        if (fj_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << poly_to_string(F_, fj_[j]) << ")";
        if (j >= 1) {
            os << "*T";
            if (j > 1) os << "^" << j;
        }
    }
    os << "  over " << F_.describe();
    return os.str();
}

} // namespace christol
