#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "christol/fq.hpp"
#include "christol/kernel.hpp"

namespace christol {

// Deterministic finite automaton with output.  States are 0..n_states-1,
// the digit alphabet is 0..q-1, and tau holds one packed F_q value per
// state.  The convention says in which order the base-q digits of n are
// consumed: reverse = least significant digit first, forward = most
// significant first.  n = 0 is the empty word.
enum class Convention { reverse, forward };

struct Dfao {
    std::uint64_t q = 2;
    Convention conv = Convention::reverse;
    int n_states = 0;
    int initial = 0;
    std::vector<std::vector<int>> delta; // [state][digit] -> state
    std::vector<fq_t> tau;               // [state] -> output
};

// Reverse-reading DFAO straight from a kernel: states are the kernel
// elements, transitions the digit maps, outputs the constant terms.
Dfao build_reverse_dfao(const Kernel& k);
Dfao build_reverse_dfao(const TruncKernel& k);

// Forward-reading DFAO: the orbit of the output functional under
// right-multiplication by the digit matrices; tau(mu) = mu . start.
Dfao build_forward_dfao(const Fq& F, const Representation& rep,
                        std::uint64_t max_states = 1000000);

fq_t dfao_eval(const Dfao& d, std::uint64_t n);
// digits are given most-significant first (natural writing order).
fq_t dfao_eval_digits(const Dfao& d, const std::vector<std::uint64_t>& digits);

// Unreachable-state pruning followed by Moore partition refinement, then
// canonical renumbering.  Preserves the generated function.
Dfao minimize(const Dfao& d);

// BFS renumbering from the initial state, digits scanned ascending.  Two
// isomorphic automata serialize identically after this.
Dfao canonical_renumber(const Dfao& d);

// True iff prepending 1..3 zero digits never changes the output, for all
// n < 10^4.
bool check_leading_zero_invariance(const Dfao& d);

std::string serialize_dot(const Dfao& d);
std::string serialize_json(const Dfao& d);
Dfao parse_dfao_json(const std::string& text);

} // namespace christol
