#pragma once

#include "christol/poly.hpp"

namespace christol {

// Rational function over F_q in canonical form: gcd(num, den) = 1 and den
// monic.  Zero is 0/1.  Construct through rf_make so the invariant holds.
struct RatFunc {
    Poly num;
    Poly den = Poly::constant(1);

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

RatFunc rf_make(const Fq& F, Poly num, Poly den);
RatFunc rf_from_poly(Poly p);
RatFunc rf_constant(fq_t a);
bool rf_is_poly(const RatFunc& a);

RatFunc rf_add(const Fq& F, const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const Fq& F, const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const Fq& F, const RatFunc& a);
RatFunc rf_mul(const Fq& F, const RatFunc& a, const RatFunc& b);
RatFunc rf_inv(const Fq& F, const RatFunc& a);
RatFunc rf_div(const Fq& F, const RatFunc& a, const RatFunc& b);
RatFunc rf_scale(const Fq& F, const RatFunc& a, fq_t s);

// Evaluation at a point where the denominator does not vanish.
fq_t rf_eval(const Fq& F, const RatFunc& a, fq_t x0);

std::string rf_to_string(const Fq& F, const RatFunc& a, const std::string& var = "x");

} // namespace christol
