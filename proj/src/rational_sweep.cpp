#include "christol/rational_sweep.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "christol/curve.hpp"
#include "christol/errors.hpp"
#include "christol/kernel.hpp"
#include "christol/series.hpp"

namespace christol {

int zp_deg(const ZPoly& a) { return (int)a.size() - 1; }

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), ZInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    zp_trim(r);
    return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), ZInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    zp_trim(r);
    return r;
}

ZPoly zp_neg(const ZPoly& a) {
    ZPoly r = a;
    for (auto& c : r) c = -c;
    return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, ZInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    zp_trim(r);
    return r;
}

ZPoly zp_derivative(const ZPoly& a) {
    ZPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (ZInt)i);
    zp_trim(r);
    return r;
}

std::string zp_to_string(const ZPoly& a, const std::string& var) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = (int)a.size() - 1; i >= 0; --i) {
        if (a[i] == 0) continue;
        ZInt c = a[i];
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0 || c != 1) os << c.str();
        if (i > 0) {
            if (c != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Rational-coefficient helpers (Euclid over Q keeps the code short; the
// inputs here are desk-scale).
using QPoly = std::vector<ZRat>;

void qp_trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qp_of(const ZPoly& a) {
    QPoly r(a.begin(), a.end());
    return r;
}

// a mod b, b nonzero.
QPoly qp_mod(QPoly a, const QPoly& b) {
    qp_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        ZRat f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        qp_trim(a);
    }
    return a;
}

QPoly qp_gcd(QPoly a, QPoly b) {
    qp_trim(a);
    qp_trim(b);
    while (!b.empty()) {
        QPoly r = qp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        ZRat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

QPoly qp_mulmod(const QPoly& a, const QPoly& b, const QPoly& m) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, ZRat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return qp_mod(std::move(r), m);
}

// Converts a rational-coefficient polynomial to the canonical coprime
// integer pair (poly, scalar denominator is absorbed by the caller).
ZPoly qp_clear_denominators(const QPoly& a) {
    ZInt l = 1;
    for (const auto& c : a) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    ZPoly r;
    r.reserve(a.size());
    for (const auto& c : a)
        r.push_back(boost::multiprecision::numerator(c) *
                    (l / boost::multiprecision::denominator(c)));
    zp_trim(r);
    return r;
}

ZInt zp_content(const ZPoly& a) {
    ZInt g = 0;
    for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
    return g;
}

std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

} // namespace

RationalSeriesQ make_rational_series(ZPoly num, ZPoly den) {
    zp_trim(num);
    zp_trim(den);
    if (den.empty()) throw UserError("denominator is zero");
    if (den[0] == 0) throw UserError("denominator vanishes at 0: the power series does not exist");

    QPoly qn = qp_of(num), qd = qp_of(den);
    QPoly g = qp_gcd(qn, qd);
    if (g.size() > 1) {
        // Exact division by the common factor.
        auto qp_div = [](QPoly a, const QPoly& b) {
            QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, ZRat(0));
            while (a.size() >= b.size() && !a.empty()) {
                ZRat f = a.back() / b.back();
                size_t shift = a.size() - b.size();
                q[shift] = f;
                for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
                qp_trim(a);
            }
            return q;
        };
        qn = qp_div(std::move(qn), g);
        qd = qp_div(std::move(qd), g);
    }

    ZPoly n2 = qp_clear_denominators(qn);
    ZPoly d2 = qp_clear_denominators(qd);
    // Primitive parts; the scalar ratio is fixed by cross-multiplying the
    // contents so that num/den is unchanged up to the same rational.
    ZInt cn = zp_content(n2), cd = zp_content(d2);
    if (cd == 0) throw InternalError("denominator collapsed during reduction");
    ZInt g2 = boost::multiprecision::gcd(cn, cd);
    if (g2 > 1) {
        for (auto& c : n2) c /= g2;
        for (auto& c : d2) c /= g2;
    }
    if (!d2.empty() && d2.back() < 0) {
        for (auto& c : n2) c = -c;
        for (auto& c : d2) c = -c;
    }
    if (d2.empty() || d2[0] == 0)
        throw UserError("denominator vanishes at 0 after reduction");
    RationalSeriesQ y;
    y.num = std::move(n2);
    y.den = std::move(d2);
    return y;
}

Boundedness classify_bounded(const RationalSeriesQ& y) {
    int D = zp_deg(y.den);
    if (D <= 0) return Boundedness::Bounded; // polynomial: eventually zero

    // At worst simple poles: squarefree denominator.
    QPoly qd = qp_of(y.den);
    QPoly g = qp_gcd(qd, qp_of(zp_derivative(y.den)));
    if (g.size() > 1) return Boundedness::Unbounded;

    // Poles at roots of unity: den | x^L - 1 where L = lcm of all orders a
    // root of algebraic degree <= D could have.  phi(m) >= sqrt(m/2) gives
    // the finite search window.
    ZInt L = 1;
    for (std::uint64_t m = 1; m <= (std::uint64_t)(2 * D * D + 2); ++m)
        if (euler_phi(m) <= (std::uint64_t)D) L = boost::multiprecision::lcm(L, ZInt(m));

    // x^L mod den by binary exponentiation.
    QPoly base = qp_mod(QPoly{ZRat(0), ZRat(1)}, qd);
    QPoly acc{ZRat(1)};
    acc = qp_mod(std::move(acc), qd);
    unsigned bits = boost::multiprecision::msb(L) + 1;
    for (unsigned i = bits; i-- > 0;) {
        acc = qp_mulmod(acc, acc, qd);
        if (boost::multiprecision::bit_test(L, i)) acc = qp_mulmod(acc, base, qd);
    }
    return (acc == QPoly{ZRat(1)}) ? Boundedness::Bounded : Boundedness::Unbounded;
}

namespace {

Poly zp_reduce_mod_p(const Fq& F, const ZPoly& a) {
    std::vector<fq_t> cs(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        ZInt m = a[i] % (std::uint64_t)F.p();
        if (m < 0) m += (std::uint64_t)F.p();
        cs[i] = m.convert_to<fq_t>();
    }
    return poly_from(F, std::move(cs));
}

std::string admissibility_obstruction(const RationalSeriesQ& y, std::uint64_t p) {
    if (!Fq::is_prime(p)) return "not prime";
    if (y.den[0] % p == 0) return "p divides den(0)";
    if (y.den.back() % p == 0) return "p divides the leading coefficient of den";
    return "";
}

} // namespace

SweepResult prime_sweep(const RationalSeriesQ& y, const std::vector<std::uint64_t>& primes,
                        std::uint64_t max_states) {
    SweepResult out;
    out.verdict = classify_bounded(y);
    size_t admissible = 0;
    for (std::uint64_t p : primes) {
        SweepRow row;
        row.p = p;
        row.skipped_reason = admissibility_obstruction(y, p);
        if (row.skipped_reason.empty()) {
            ++admissible;
            Fq F = Fq::prime_field((std::uint32_t)p);
            Poly num_p = zp_reduce_mod_p(F, y.num);
            Poly den_p = zp_reduce_mod_p(F, y.den);
            // Curve den*T - num, a degree-1 relation for the reduction.
            PlaneCurve curve(F, {poly_neg(F, num_p), den_p});
            TruncSeries branch = ts_of_ratfunc(F, rf_make(F, num_p, den_p), 64);
            Kernel k = enumerate_kernel(curve, branch, max_states);
            row.n_p = k.size();
        }
        out.rows.push_back(std::move(row));
    }
    if (admissible == 0) throw UserError("no admissible prime in the sweep list");
    return out;
}

std::vector<fq_t> qseries_mod_p(const Fq& F, const RationalSeriesQ& y, int n) {
    std::string obstruction = admissibility_obstruction(y, F.p());
    if (F.r() != 1) throw UserError("rational sweep reductions live in prime fields");
    if (!obstruction.empty())
        throw UserError("characteristic " + std::to_string(F.p()) + " is inadmissible: " + obstruction);

    // Over Q first: den_0 a(n) = num_n - sum_{k>=1} den_k a(n-k); the
    // denominators of a(n) divide powers of den(0), which p does not divide.
    std::vector<ZRat> a((size_t)n, ZRat(0));
    ZRat d0 = y.den[0];
    for (int i = 0; i < n; ++i) {
        ZRat acc = (i < (int)y.num.size()) ? ZRat(y.num[i]) : ZRat(0);
        for (int k = 1; k <= zp_deg(y.den) && k <= i; ++k) acc -= ZRat(y.den[k]) * a[i - k];
        a[i] = acc / d0;
    }
    std::vector<fq_t> out((size_t)n, 0);
    for (int i = 0; i < n; ++i) {
        ZInt nu = boost::multiprecision::numerator(a[i]);
        ZInt de = boost::multiprecision::denominator(a[i]);
        ZInt nm = nu % (std::uint64_t)F.p();
        if (nm < 0) nm += (std::uint64_t)F.p();
        ZInt dm = de % (std::uint64_t)F.p();
        if (dm == 0) throw InternalError("rational coefficient has a p in its denominator");
        out[i] = F.div(nm.convert_to<fq_t>(), dm.convert_to<fq_t>());
    }
    return out;
}

std::string sweep_text(const SweepResult& r) {
    std::ostringstream os;
    os << "prime sweep of a rational series over Q (other number fields unsupported)\n";
    os << "verdict: " << (r.verdict == Boundedness::Bounded ? "Bounded" : "Unbounded") << "\n";
    size_t wp = 1, wn = 3;
    for (const auto& row : r.rows) {
        wp = std::max(wp, std::to_string(row.p).size());
        if (row.n_p) wn = std::max(wn, std::to_string(*row.n_p).size());
    }
    os << std::string(wp > 1 ? wp - 1 : 0, ' ') << "p | N_p | skipped-reason\n";
    for (const auto& row : r.rows) {
        std::string ps = std::to_string(row.p);
        std::string ns = row.n_p ? std::to_string(*row.n_p) : "";
        os << std::string(wp - ps.size(), ' ') << ps << " | " << std::string(wn - ns.size(), ' ')
           << ns << " | " << row.skipped_reason << "\n";
    }
    return os.str();
}

std::string sweep_json(const SweepResult& r) {
    nlohmann::ordered_json j;
    j["field"] = "Q";
    j["verdict"] = (r.verdict == Boundedness::Bounded) ? "Bounded" : "Unbounded";
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json e;
        e["p"] = row.p;
        if (row.n_p)
            e["n_p"] = *row.n_p;
        else
            e["n_p"] = nullptr;
        if (row.skipped_reason.empty())
            e["skipped"] = nullptr;
        else
            e["skipped"] = row.skipped_reason;
        j["rows"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

} // namespace christol
