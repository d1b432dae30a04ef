#pragma once

#include "christol/series.hpp"

namespace christol {

// Closed orbit of the branch series under the digit maps, together with the
// transition table and the constant term of every element (the automaton
// output).  Element 0 is the starting element.
struct Kernel {
    std::vector<FFElem> elements;
    std::vector<std::vector<int>> delta; // delta[state][digit]
    std::vector<fq_t> outputs;
    std::uint64_t alphabet = 0; // number of digits

    std::uint64_t size() const { return elements.size(); }
};

// Orbit of `start` under all composites of `levels` Cartier sections, i.e.
// the base-p^levels kernel.  levels = r gives the q-kernel, levels = 1 the
// p-kernel.  Throws ComputeRefusal past max_states.
Kernel enumerate_orbit(const PlaneCurve& curve, const TruncSeries& branch,
                       const FFElem& start, unsigned levels,
                       std::uint64_t max_states = 1000000);

// q-kernel of the curve's own branch series (start = y).
Kernel enumerate_kernel(const PlaneCurve& curve, const TruncSeries& branch,
                        std::uint64_t max_states = 1000000);

// Truncation-based oracle: BFS over plain base-q decimations of a truncated
// series.  States are identified by comparing known prefixes, so this
// pathway is heuristic; every newly stored state must retain at least
// min_keep known coefficients or a PrecisionExhaustion is thrown carrying a
// precision estimate sufficient for the retry.
struct TruncKernel {
    std::vector<TruncSeries> states;
    std::vector<std::vector<int>> delta;
    std::vector<fq_t> outputs;
    std::uint64_t alphabet = 0;

    std::uint64_t size() const { return states.size(); }
};

TruncKernel kernel_truncated(const Fq& F, const TruncSeries& s, std::uint64_t q,
                             std::uint64_t max_states = 1000000, int min_keep = 8);

// Linear representation of the sequence: a(n) = functional . phi(c_u) ...
// phi(c_0) . start for the base-q digits c_u ... c_0 of n (c_0 least
// significant).  dim is the rank of the F_q-span of the kernel.
struct Representation {
    unsigned dim = 0;
    std::uint64_t alphabet = 0;
    std::vector<std::vector<std::vector<fq_t>>> mats; // mats[c][i][j], dim x dim
    std::vector<fq_t> start;                          // coordinates of the branch series
    std::vector<fq_t> functional;                     // constant terms of the basis
};

Representation extract_representation(const PlaneCurve& curve, const Kernel& k);
Representation extract_representation(const Fq& F, const TruncKernel& k);

// Human-readable kernel table (state, canonical representative, transitions,
// output).
std::string kernel_dump(const PlaneCurve& curve, const Kernel& k);

} // namespace christol
