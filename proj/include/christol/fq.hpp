#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "christol/errors.hpp"

namespace christol {

// An element of F_q, q = p^r, packed as sum c_i * p^i of its coefficient
// vector (c_0, ..., c_{r-1}) over F_p.  For prime fields the packed value is
// the element itself.  All arithmetic goes through the owning Fq context.
using fq_t = std::uint32_t;

// Field context for F_q = F_p[t]/(m(t)).  Immutable after construction, so a
// single instance can be shared freely across threads.
class Fq {
public:
    // F_p.  p must be prime and < 2^16.
    static Fq prime_field(std::uint64_t p);

    // F_{p^r}.  When no modulus is given, the smallest irreducible monic
    // polynomial of degree r in lexicographic coefficient order is used
    // (coefficients read as base-p digits, constant term least significant);
    // for p = 2, r = 2 that picks t^2 + t + 1.  A supplied modulus is a
    // length r+1 coefficient vector, constant term first, and must be monic
    // and irreducible over F_p.
    static Fq extension(std::uint64_t p, unsigned r,
                        const std::optional<std::vector<fq_t>>& modulus = std::nullopt);

    std::uint64_t p() const { return p_; }
    unsigned r() const { return r_; }
    std::uint64_t q() const { return q_; }
    // Modulus coefficients, constant term first; {0, 1} placeholder for r = 1.
    const std::vector<fq_t>& modulus() const { return mod_; }

    fq_t zero() const { return 0; }
    fq_t one() const { return 1; }
    bool is_valid(fq_t a) const { return a < q_; }

    // Embeds an integer through the prime subfield.
    fq_t from_int(std::int64_t n) const;

    // Packs/unpacks the coefficient vector over F_p (length r).
    fq_t pack(const std::vector<fq_t>& digits) const;
    std::vector<fq_t> digits(fq_t a) const;

    fq_t add(fq_t a, fq_t b) const;
    fq_t sub(fq_t a, fq_t b) const;
    fq_t neg(fq_t a) const;
    fq_t mul(fq_t a, fq_t b) const;
    fq_t inv(fq_t a) const;
    fq_t div(fq_t a, fq_t b) const { return mul(a, inv(b)); }
    fq_t pow(fq_t a, std::uint64_t e) const;

    // a -> a^p.
    fq_t frobenius(fq_t a) const;
    // The unique b with b^p = a, computed as a^{p^{r-1}}.
    fq_t pth_root(fq_t a) const;

    bool operator==(const Fq& o) const { return p_ == o.p_ && r_ == o.r_ && mod_ == o.mod_; }

    std::string describe() const;

    static bool is_prime(std::uint64_t n);

private:
    Fq() = default;
    void init_tables();

    std::uint64_t p_ = 0;
    unsigned r_ = 0;
    std::uint64_t q_ = 0;
    std::vector<fq_t> mod_;                    // length r+1, constant first, monic
    std::vector<std::vector<fq_t>> red_;       // t^{r+k} mod m, digit vectors, k = 0..r-2
    std::uint64_t pth_root_exp_ = 1;           // p^{r-1}
};

} // namespace christol
