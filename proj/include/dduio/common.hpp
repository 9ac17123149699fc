#pragma once

#include <stdexcept>
#include <string>

namespace dduio {

// Thrown when input data violates a precondition (bad dimensions, NaN/Inf
// entries, malformed files). Maps to CLI exit code 3.
struct data_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical routine fails (decomposition non-convergence,
// overflow, inconsistent dual-route checks). Maps to CLI exit code 4.
struct numerics_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Three-valued verdict for checks that can be structurally impossible to
// decide (e.g. persistency of excitation when d was never recorded).
enum class CheckState { passed, failed, not_checkable };

inline const char* to_string(CheckState s)
{
    switch (s) {
        case CheckState::passed: return "passed";
        case CheckState::failed: return "failed";
        default: return "not_checkable";
    }
}

}  // namespace dduio
