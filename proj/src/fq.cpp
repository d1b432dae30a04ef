#include "christol/fq.hpp"

#include <algorithm>
#include <sstream>

namespace christol {

namespace {

// Digit-vector arithmetic over F_p used only while a context is being
// constructed (irreducibility of the modulus cannot go through Fq yet).
using DigitPoly = std::vector<std::uint64_t>;

void dp_trim(DigitPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

DigitPoly dp_mul(const DigitPoly& a, const DigitPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    DigitPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    dp_trim(out);
    return out;
}

std::uint64_t dp_inv_mod_p(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, nt = 1, r = (std::int64_t)p, nr = (std::int64_t)(a % p);
    while (nr != 0) {
        std::int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    return (std::uint64_t)((t % (std::int64_t)p + (std::int64_t)p) % (std::int64_t)p);
}

DigitPoly dp_mod(DigitPoly a, const DigitPoly& m, std::uint64_t p) {
    dp_trim(a);
    if (m.empty()) throw InternalError("dp_mod by zero");
    std::uint64_t lcinv = dp_inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = (a.back() * lcinv) % p;
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            std::uint64_t sub = (c * m[i]) % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        dp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

DigitPoly dp_powmod_x(std::uint64_t e_p, unsigned e_r, const DigitPoly& m, std::uint64_t p) {
    // x^(p^e_r) mod m via repeated exponentiation by p.
    DigitPoly x = {0, 1};
    DigitPoly acc = dp_mod(x, m, p);
    for (unsigned k = 0; k < e_r; ++k) {
        // acc <- acc^p mod m
        DigitPoly r = {1};
        DigitPoly base = acc;
        std::uint64_t e = e_p;
        while (e) {
            if (e & 1) r = dp_mod(dp_mul(r, base, p), m, p);
            base = dp_mod(dp_mul(base, base, p), m, p);
            e >>= 1;
        }
        acc = r;
    }
    return acc;
}

DigitPoly dp_gcd(DigitPoly a, DigitPoly b, std::uint64_t p) {
    dp_trim(a);
    dp_trim(b);
    while (!b.empty()) {
        DigitPoly r = dp_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

// Rabin's test: m (monic, degree r) is irreducible over F_p iff
// x^(p^r) = x mod m and gcd(x^(p^(r/l)) - x, m) = 1 for every prime l | r.
bool dp_irreducible(const DigitPoly& m, std::uint64_t p) {
    unsigned r = (unsigned)m.size() - 1;
    if (r == 0) return false;
    DigitPoly xpr = dp_powmod_x(p, r, m, p);
    DigitPoly x = dp_mod({0, 1}, m, p);
    if (xpr != x) return false;
    for (unsigned l = 2; l <= r; ++l) {
        if (r % l != 0) continue;
        bool lprime = true;
        for (unsigned d = 2; d * d <= l; ++d)
            if (l % d == 0) { lprime = false; break; }
        if (!lprime) continue;
        DigitPoly xp = dp_powmod_x(p, r / l, m, p);
        // xp - x
        DigitPoly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        dp_trim(diff);
        DigitPoly g = dp_gcd(m, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

bool Fq::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Fq Fq::prime_field(std::uint64_t p) {
    return extension(p, 1);
}

Fq Fq::extension(std::uint64_t p, unsigned r,
                 const std::optional<std::vector<fq_t>>& modulus) {
    if (!is_prime(p)) throw UserError("p = " + std::to_string(p) + " is not prime");
    if (p >= (1u << 16)) throw UserError("p too large (must be < 2^16)");
    if (r < 1) throw UserError("extension degree r must be >= 1");

    // q must fit in fq_t with headroom.
    std::uint64_t q = 1;
    for (unsigned i = 0; i < r; ++i) {
        q *= p;
        if (q >= (1ull << 31)) throw UserError("q = p^r too large (must be < 2^31)");
    }

    Fq F;
    F.p_ = p;
    F.r_ = r;
    F.q_ = q;

    if (r == 1) {
        F.mod_ = {0, 1};
        F.pth_root_exp_ = 1;
        return F;
    }

    if (modulus) {
        if (modulus->size() != r + 1)
            throw UserError("modulus must have degree r = " + std::to_string(r));
        DigitPoly m(modulus->begin(), modulus->end());
        for (auto c : m)
            if (c >= p) throw UserError("modulus coefficient out of range");
        if (m.back() != 1) throw UserError("modulus must be monic");
        if (!dp_irreducible(m, p)) {
            std::ostringstream os;
            os << "modulus is reducible over F_" << p;
            throw UserError(os.str());
        }
        F.mod_.assign(modulus->begin(), modulus->end());
    } else {
        // Smallest irreducible in lexicographic coefficient order: lower
        // coefficients (c_0, ..., c_{r-1}) enumerated as base-p digits of an
        // ascending counter, constant term least significant.
        std::uint64_t limit = 1;
        for (unsigned i = 0; i < r; ++i) limit *= p;
        bool found = false;
        for (std::uint64_t k = 0; k < limit && !found; ++k) {
            DigitPoly m(r + 1, 0);
            std::uint64_t v = k;
            for (unsigned i = 0; i < r; ++i) {
                m[i] = v % p;
                v /= p;
            }
            m[r] = 1;
            if (dp_irreducible(m, p)) {
                F.mod_.assign(m.begin(), m.end());
                found = true;
            }
        }
        if (!found) throw InternalError("no irreducible modulus found"); // cannot happen
    }

    F.init_tables();
    return F;
}

void Fq::init_tables() {
    // t^{r+k} mod m for k = 0..r-2, used to fold products back below degree r.
    red_.assign(r_ - 1, std::vector<fq_t>(r_, 0));
    // t^r = -sum m_i t^i
    std::vector<std::uint64_t> cur(r_, 0);
    for (unsigned i = 0; i < r_; ++i)
        cur[i] = (p_ - mod_[i] % p_) % p_;
    for (unsigned k = 0; k + 1 < r_; ++k) {
        for (unsigned i = 0; i < r_; ++i) red_[k][i] = (fq_t)cur[i];
        // multiply cur by t and reduce
        std::uint64_t top = cur[r_ - 1];
        for (unsigned i = r_ - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top) {
            for (unsigned i = 0; i < r_; ++i) {
                std::uint64_t sub = (top * (mod_[i] % p_)) % p_;
                cur[i] = (cur[i] + p_ - sub) % p_;
            }
        }
    }
    pth_root_exp_ = 1;
    for (unsigned i = 0; i + 1 < r_; ++i) pth_root_exp_ *= p_;
}

fq_t Fq::from_int(std::int64_t n) const {
    std::int64_t m = n % (std::int64_t)p_;
    if (m < 0) m += (std::int64_t)p_;
    return (fq_t)m;
}

fq_t Fq::pack(const std::vector<fq_t>& digits) const {
    if (digits.size() > r_) throw UserError("too many digits for field element");
    std::uint64_t v = 0;
    for (size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= p_) throw UserError("digit out of range");
        v = v * p_ + digits[i];
    }
    return (fq_t)v;
}

std::vector<fq_t> Fq::digits(fq_t a) const {
    std::vector<fq_t> d(r_, 0);
    std::uint64_t v = a;
    for (unsigned i = 0; i < r_; ++i) {
        d[i] = (fq_t)(v % p_);
        v /= p_;
    }
    return d;
}

fq_t Fq::add(fq_t a, fq_t b) const {
    if (r_ == 1) {
        std::uint64_t s = (std::uint64_t)a + b;
        if (s >= p_) s -= p_;
        return (fq_t)s;
    }
    std::uint64_t va = a, vb = b, out = 0, mult = 1;
    for (unsigned i = 0; i < r_; ++i) {
        std::uint64_t s = va % p_ + vb % p_;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        va /= p_;
        vb /= p_;
    }
    return (fq_t)out;
}

fq_t Fq::neg(fq_t a) const {
    if (r_ == 1) return a == 0 ? 0 : (fq_t)(p_ - a);
    std::uint64_t va = a, out = 0, mult = 1;
    for (unsigned i = 0; i < r_; ++i) {
        std::uint64_t c = va % p_;
        out += (c == 0 ? 0 : p_ - c) * mult;
        mult *= p_;
        va /= p_;
    }
    return (fq_t)out;
}

fq_t Fq::sub(fq_t a, fq_t b) const { return add(a, neg(b)); }

fq_t Fq::mul(fq_t a, fq_t b) const {
    if (r_ == 1) return (fq_t)(((std::uint64_t)a * b) % p_);
    if (a == 0 || b == 0) return 0;
    std::uint64_t da[16], db[16];
    std::uint64_t va = a, vb = b;
    for (unsigned i = 0; i < r_; ++i) {
        da[i] = va % p_;
        db[i] = vb % p_;
        va /= p_;
        vb /= p_;
    }
    std::uint64_t conv[31] = {0};
    for (unsigned i = 0; i < r_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < r_; ++j)
            conv[i + j] = (conv[i + j] + da[i] * db[j]) % p_;
    }
    // Fold degrees r..2r-2 down using the cached reduction rows.
    for (unsigned k = 2 * r_ - 2; k >= r_; --k) {
        std::uint64_t c = conv[k];
        if (c) {
            const auto& row = red_[k - r_];
            for (unsigned i = 0; i < r_; ++i)
                conv[i] = (conv[i] + c * row[i]) % p_;
        }
        if (k == r_) break;
    }
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < r_; ++i) {
        out += conv[i] * mult;
        mult *= p_;
    }
    return (fq_t)out;
}

fq_t Fq::pow(fq_t a, std::uint64_t e) const {
    fq_t result = 1, base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

fq_t Fq::inv(fq_t a) const {
    if (a == 0) throw UserError("division by zero in F_q");
    if (r_ == 1) return (fq_t)dp_inv_mod_p(a, p_);
    return pow(a, q_ - 2);
}

fq_t Fq::frobenius(fq_t a) const { return pow(a, p_); }

fq_t Fq::pth_root(fq_t a) const { return pow(a, pth_root_exp_); }

std::string Fq::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (r_ > 1) {
        os << " = F_" << p_ << "[t]/(";
        bool first = true;
        for (size_t i = mod_.size(); i-- > 0;) {
            if (mod_[i] == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || mod_[i] != 1) os << mod_[i];
            if (i >= 1) {
                if (mod_[i] != 1) os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
        }
        os << ")";
    }
    return os.str();
}

} // namespace christol
