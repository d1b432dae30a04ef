#include "christol/poly.hpp"

#include <algorithm>
#include <sstream>

namespace christol {

void poly_trim(Poly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

Poly poly_from(const Fq& F, std::vector<fq_t> coeffs) {
    for (auto v : coeffs)
        if (!F.is_valid(v)) throw UserError("coefficient out of range for field");
    Poly a{std::move(coeffs)};
    poly_trim(a);
    return a;
}

fq_t poly_lc(const Poly& a) { return a.is_zero() ? 0 : a.c.back(); }

Poly poly_add(const Fq& F, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] = F.add(out.c[i], b.c[i]);
    poly_trim(out);
    return out;
}

Poly poly_neg(const Fq& F, const Poly& a) {
    Poly out = a;
    for (auto& v : out.c) v = F.neg(v);
    return out;
}

Poly poly_sub(const Fq& F, const Poly& a, const Poly& b) {
    return poly_add(F, a, poly_neg(F, b));
}

Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
        }
    }
    poly_trim(out);
    return out;
}

Poly poly_scale(const Fq& F, const Poly& a, fq_t s) {
    if (s == 0) return {};
    Poly out = a;
    for (auto& v : out.c) v = F.mul(v, s);
    poly_trim(out);
    return out;
}

Poly poly_shift(const Poly& a, unsigned k) {
    if (a.is_zero() || k == 0) return a;
    Poly out;
    out.c.assign(a.c.size() + k, 0);
    std::copy(a.c.begin(), a.c.end(), out.c.begin() + k);
    return out;
}

Poly poly_pow(const Fq& F, const Poly& a, std::uint64_t e) {
    Poly result = Poly::constant(1);
    Poly base = a;
    while (e) {
        if (e & 1) result = poly_mul(F, result, base);
        base = poly_mul(F, base, base);
        e >>= 1;
    }
    return result;
}

std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw UserError("polynomial division by zero");
    if (poly_deg(a) < poly_deg(b)) return {Poly::zero(), a};
    Poly rem = a;
    Poly quot;
    quot.c.assign(a.c.size() - b.c.size() + 1, 0);
    fq_t lcinv = F.inv(poly_lc(b));
    while (!rem.is_zero() && poly_deg(rem) >= poly_deg(b)) {
        size_t shift = rem.c.size() - b.c.size();
        fq_t coeff = F.mul(rem.c.back(), lcinv);
        quot.c[shift] = coeff;
        for (size_t i = 0; i < b.c.size(); ++i)
            rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(coeff, b.c[i]));
        poly_trim(rem);
    }
    poly_trim(quot);
    return {quot, rem};
}

Poly poly_exact_div(const Fq& F, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(F, a, b);
    if (!r.is_zero()) throw InternalError("exact polynomial division left a remainder");
    return q;
}

Poly poly_monic(const Fq& F, const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(F, a, F.inv(poly_lc(a)));
}

Poly poly_gcd(const Fq& F, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(F, x, y).second;
        x = y;
        y = r;
    }
    return poly_monic(F, x);
}

Poly poly_derivative(const Fq& F, const Poly& a) {
    Poly out;
    if (a.c.size() <= 1) return out;
    out.c.assign(a.c.size() - 1, 0);
    for (size_t i = 1; i < a.c.size(); ++i)
        out.c[i - 1] = F.mul(a.c[i], F.from_int((std::int64_t)(i % F.p())));
    poly_trim(out);
    return out;
}

fq_t poly_eval(const Fq& F, const Poly& a, fq_t x0) {
    fq_t acc = 0;
    for (size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x0), a.c[i]);
    return acc;
}

unsigned poly_valuation(const Poly& a) {
    if (a.is_zero()) return 0;
    unsigned v = 0;
    while (v < a.c.size() && a.c[v] == 0) ++v;
    return v;
}

Poly poly_frobenius_coeffs(const Fq& F, const Poly& a) {
    Poly out = a;
    for (auto& v : out.c) v = F.frobenius(v);
    return out;
}

Poly poly_pth_root_coeffs(const Fq& F, const Poly& a) {
    Poly out = a;
    for (auto& v : out.c) v = F.pth_root(v);
    return out;
}

namespace {

Poly poly_powmod(const Fq& F, const Poly& a, std::uint64_t e, const Poly& m) {
    Poly result = Poly::constant(1);
    Poly base = poly_divmod(F, a, m).second;
    while (e) {
        if (e & 1) result = poly_divmod(F, poly_mul(F, result, base), m).second;
        base = poly_divmod(F, poly_mul(F, base, base), m).second;
        e >>= 1;
    }
    return result;
}

Poly poly_qpowmod_x(const Fq& F, unsigned k, const Poly& m) {
    // x^(q^k) mod m
    Poly acc = poly_divmod(F, Poly::x(), m).second;
    for (unsigned i = 0; i < k; ++i) acc = poly_powmod(F, acc, F.q(), m);
    return acc;
}

} // namespace

bool poly_is_irreducible(const Fq& F, const Poly& a) {
    int n = poly_deg(a);
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly xqn = poly_qpowmod_x(F, (unsigned)n, a);
    if (!(poly_divmod(F, poly_sub(F, xqn, Poly::x()), a).second.is_zero())) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { lprime = false; break; }
        if (!lprime) continue;
        Poly xq = poly_qpowmod_x(F, (unsigned)(n / l), a);
        Poly g = poly_gcd(F, a, poly_sub(F, xq, Poly::x()));
        if (poly_deg(g) != 0) return false;
    }
    return true;
}

bool poly_is_primitive(const Fq& F, const Poly& a) {
    int n = poly_deg(a);
    if (n < 1) return false;
    if (poly_eval(F, a, 0) == 0) return false; // x | a, so x is not a unit
    if (!poly_is_irreducible(F, a)) return false;
    // order of x in (F_q[x]/a)^* must be q^n - 1
    std::uint64_t order = 1;
    for (int i = 0; i < n; ++i) {
        if (order > (1ull << 40) / F.q())
            throw ComputeRefusal("primitivity test: q^deg - 1 too large to factor");
        order *= F.q();
    }
    order -= 1;
    Poly one = Poly::constant(1);
    if (!(poly_powmod(F, Poly::x(), order, a) == one)) return false;
    std::uint64_t rest = order;
    for (std::uint64_t l = 2; l * l <= rest; ++l) {
        if (rest % l != 0) continue;
        while (rest % l == 0) rest /= l;
        if (poly_powmod(F, Poly::x(), order / l, a) == one) return false;
    }
    if (rest > 1 && poly_powmod(F, Poly::x(), order / rest, a) == one) return false;
    return true;
}

std::string poly_to_string(const Fq& F, const Poly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = a.c.size(); i-- > 0;) {
        if (a.c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || a.c[i] != 1) {
            if (F.r() == 1) {
                os << a.c[i];
            } else {
                os << "[" << a.c[i] << "]";
            }
            if (i >= 1) os << "*";
        }
        if (i >= 1) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace christol
