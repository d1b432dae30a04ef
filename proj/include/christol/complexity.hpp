#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "christol/curve.hpp"
#include "christol/fq.hpp"
#include "christol/poly.hpp"
#include "christol/series.hpp"

namespace christol {

using bigint = boost::multiprecision::cpp_int;

// Largest LCM over all partitions of n (Landau's function), exact for
// n <= 200.
std::uint64_t landau(unsigned n);

struct BoundEntry {
    std::string name;    // main / refined / easy / forward / genus_free
    bigint value;
    std::string against; // "N_rev" or "N_fwd"
    std::optional<std::uint64_t> n; // the measured count, if available
    std::string verdict; // PASS / FAIL / SKIP
};

struct ComplexityReport {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    unsigned r = 0;
    int d = 0;
    int h = 0;
    std::optional<long long> genus_input;
    long long genus_bound = 0;   // Castelnuovo (d-1)(h-1)
    long long genus_used = 0;
    bool genus_substituted = false;
    std::uint64_t n_rev = 0;
    std::optional<std::uint64_t> n_fwd;
    unsigned landau_arg = 0;
    std::uint64_t landau_val = 0;
    std::vector<BoundEntry> bounds;
};

// Evaluates the five state-count bounds for a curve of degree d and height
// h and compares them against the measured automaton sizes.  When no genus
// is supplied the Castelnuovo bound (d-1)(h-1) is substituted and flagged.
ComplexityReport bounds_report(const Fq& F, int d, int h,
                               std::optional<long long> genus,
                               std::uint64_t n_rev,
                               std::optional<std::uint64_t> n_fwd);

std::string report_text(const ComplexityReport& rep);
std::string report_json(const ComplexityReport& rep);

struct BaseCompare {
    std::uint64_t n_p = 0;
    std::uint64_t n_q = 0;
    bool pass = false; // N_q <= N_p <= (q-1)/(p-1) * N_q
};

// Enumerates the base-p and base-q kernels of the same branch and checks
// N_q <= N_p <= (q-1)/(p-1) * N_q.
BaseCompare base_compare(const PlaneCurve& curve, const TruncSeries& branch,
                         std::uint64_t max_states = 1000000);

// Polynomial in x and T, stored by ascending T-degree.
struct Bivariate {
    std::vector<Poly> byT;
    int deg_T() const { return (int)byT.size() - 1; }
};

int bivariate_deg_x(const Bivariate& b);
std::string bivariate_to_string(const Fq& F, const Bivariate& b);

// Recovers a nonzero polynomial F(x,T) with F(x, s) = 0 to the available
// precision.  m is the kernel size of the series; it sets the default
// degree caps min(q^m - 1, 32) in T and min(m * q^(m+1), 256) in x.
Bivariate algebraize(const Fq& F, const TruncSeries& s, unsigned m,
                     std::optional<int> cap_T = std::nullopt,
                     std::optional<int> cap_x = std::nullopt);

} // namespace christol
