#pragma once

#include <string>
#include <vector>

#include "christol/linalg.hpp"

namespace christol {

// Element of K = F_q(x)[y]/(f), stored as its coordinate vector over the
// power basis {1, y, ..., y^{d-1}}.
struct FFElem {
    std::vector<RatFunc> coords;
    bool operator==(const FFElem& o) const { return coords == o.coords; }
};

// NotInvertible carries a nontrivial factor of f discovered while inverting:
// the defining polynomial was reducible, which is only detected lazily.
class NotInvertible : public UserError {
public:
    NotInvertible(const std::string& msg, std::string factor_expr)
        : UserError(msg), factor(std::move(factor_expr)) {}
    std::string factor;
};

// Plane curve f(x, T) = sum_j f_j(x) T^j, separable in T.  Construction
// validates separability, computes the T-degree d and x-height h, and
// eagerly builds the caches (powers of y and the factored change-of-basis
// system for K^p-decomposition) so every later operation is read-only and
// the object can be shared across threads.
class PlaneCurve {
public:
    PlaneCurve(Fq F, std::vector<Poly> coeffs_by_tdeg);

    const Fq& field() const { return F_; }
    int degree() const { return d_; }   // d = deg_T f
    int height() const { return h_; }   // h = deg_x f
    const std::vector<Poly>& coeffs() const { return fj_; }

    FFElem zero() const;
    FFElem one() const;
    // The residue class of T: (0, 1, 0, ...) for d >= 2, -f_0/f_1 for d = 1.
    FFElem gen() const;
    FFElem from_ratfunc(RatFunc r) const;
    FFElem from_coords(std::vector<RatFunc> coords) const;

    bool is_zero(const FFElem& a) const;
    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem mul_scalar(const FFElem& a, const RatFunc& s) const;
    // Extended Euclid against f; throws NotInvertible with the factor found
    // when gcd(a, f) is proper (f reducible), UserError on a = 0.
    FFElem inv(const FFElem& a) const;

    // f evaluated at T = a (used by expansion and verification code).
    FFElem eval_f(const FFElem& a) const;

    // Unique v_0..v_{p-1} with u = sum_i v_i^p x^i; a substitution pass
    // through the cached factored basis system.
    std::vector<FFElem> kp_decompose(const FFElem& u) const;

    // Cartier-type section: lambda_p(i, u) is the v_i above.  On power
    // series it halves the series along residue i: u = sum a(n) x^n maps to
    // sum a(pn+i)^{1/p} x^n.
    FFElem lambda_p(unsigned i, const FFElem& u) const;

    // Base-q composite for a digit c = i_r p^{r-1} + ... + i_2 p + i_1:
    // applies lambda_p for i_1 first, then i_2, ..., then i_r, which on
    // series realizes sum a(qn+c) x^n (q-th roots fix F_q).
    FFElem lambda_q(std::uint64_t c, const FFElem& u) const;

    // All p^levels images at once (shared decompositions): entry c is the
    // composite for digit c in base p^levels.
    std::vector<FFElem> lambda_all(const FFElem& u, unsigned levels) const;

    // Stable identity key for hashing kernel elements.
    std::string canonical_key(const FFElem& a) const;

    std::string describe() const;

private:
    void build_ypow();
    void build_kp_system();
    FFElem reduce_tpoly(std::vector<RatFunc> tp) const;

    Fq F_;
    std::vector<Poly> fj_;
    int d_ = 0;
    int h_ = 0;
    std::vector<std::vector<RatFunc>> ypow_; // y^k coords, k = 0..max(2d-2, p(d-1))
    RFMat kp_inv_;                           // inverse basis-change, entries in F_q(z), z = x^p
};

// Splits g(x) = sum_a R_a(x^p) x^a; returns the p slice functions R_a written
// in the compressed variable (one x-power per p-th power).  Exposed for tests.
std::vector<RatFunc> rf_frobenius_split(const Fq& F, const RatFunc& g);

} // namespace christol
