#include "christol/ratfunc.hpp"

#include <sstream>

namespace christol {

RatFunc rf_make(const Fq& F, Poly num, Poly den) {
    if (den.is_zero()) throw UserError("rational function with zero denominator");
    if (num.is_zero()) return RatFunc{};
    Poly g = poly_gcd(F, num, den);
    if (poly_deg(g) > 0) {
        num = poly_exact_div(F, num, g);
        den = poly_exact_div(F, den, g);
    }
    fq_t lc = poly_lc(den);
    if (lc != 1) {
        fq_t lcinv = F.inv(lc);
        num = poly_scale(F, num, lcinv);
        den = poly_scale(F, den, lcinv);
    }
    return RatFunc{std::move(num), std::move(den)};
}

RatFunc rf_from_poly(Poly p) {
    return RatFunc{std::move(p), Poly::constant(1)};
}

RatFunc rf_constant(fq_t a) { return rf_from_poly(Poly::constant(a)); }

bool rf_is_poly(const RatFunc& a) { return poly_deg(a.den) == 0; }

RatFunc rf_add(const Fq& F, const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Poly num = poly_add(F, poly_mul(F, a.num, b.den), poly_mul(F, b.num, a.den));
    Poly den = poly_mul(F, a.den, b.den);
    return rf_make(F, std::move(num), std::move(den));
}

RatFunc rf_neg(const Fq& F, const RatFunc& a) {
    RatFunc out = a;
    out.num = poly_neg(F, out.num);
    return out;
}

RatFunc rf_sub(const Fq& F, const RatFunc& a, const RatFunc& b) {
    return rf_add(F, a, rf_neg(F, b));
}

RatFunc rf_mul(const Fq& F, const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc{};
    // Cross-reduce first so the big product never carries a common factor.
    Poly g1 = poly_gcd(F, a.num, b.den);
    Poly g2 = poly_gcd(F, b.num, a.den);
    Poly n1 = poly_deg(g1) > 0 ? poly_exact_div(F, a.num, g1) : a.num;
    Poly d2 = poly_deg(g1) > 0 ? poly_exact_div(F, b.den, g1) : b.den;
    Poly n2 = poly_deg(g2) > 0 ? poly_exact_div(F, b.num, g2) : b.num;
    Poly d1 = poly_deg(g2) > 0 ? poly_exact_div(F, a.den, g2) : a.den;
    return rf_make(F, poly_mul(F, n1, n2), poly_mul(F, d1, d2));
}

RatFunc rf_inv(const Fq& F, const RatFunc& a) {
    if (a.is_zero()) throw UserError("inverting the zero rational function");
    return rf_make(F, a.den, a.num);
}

RatFunc rf_div(const Fq& F, const RatFunc& a, const RatFunc& b) {
    return rf_mul(F, a, rf_inv(F, b));
}

RatFunc rf_scale(const Fq& F, const RatFunc& a, fq_t s) {
    if (s == 0) return RatFunc{};
    RatFunc out = a;
    out.num = poly_scale(F, out.num, s);
    return out;
}

fq_t rf_eval(const Fq& F, const RatFunc& a, fq_t x0) {
    fq_t d = poly_eval(F, a.den, x0);
    if (d == 0) throw UserError("rational function has a pole at evaluation point");
    return F.div(poly_eval(F, a.num, x0), d);
}

std::string rf_to_string(const Fq& F, const RatFunc& a, const std::string& var) {
    if (rf_is_poly(a)) return poly_to_string(F, a.num, var);
    std::ostringstream os;
    os << "(" << poly_to_string(F, a.num, var) << ")/(" << poly_to_string(F, a.den, var) << ")";
    return os.str();
}

} // namespace christol
