#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace christol {

// Bad input: malformed expressions, invalid field parameters, inseparable or
// reducible curves, branch preconditions that do not hold.  CLI exit code 1.
class UserError : public std::runtime_error {
public:
    explicit UserError(const std::string& msg) : std::runtime_error(msg) {}
};

// The computation is well posed but exceeds a declared cap (state budget,
// search caps, precision floor).  CLI exit code 2.
class ComputeRefusal : public std::runtime_error {
public:
    explicit ComputeRefusal(const std::string& msg) : std::runtime_error(msg) {}
};

// Truncated-kernel enumeration ran out of known coefficients.  Carries the
// working precision the caller would need for the retry.
class PrecisionExhaustion : public ComputeRefusal {
public:
    PrecisionExhaustion(const std::string& msg, std::uint64_t required)
        : ComputeRefusal(msg), required_precision(required) {}
    std::uint64_t required_precision;
};

// An internal invariant failed (exact division left a remainder, a cached
// table disagreed with a recomputation, ...).  Always a bug.  CLI exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace christol
