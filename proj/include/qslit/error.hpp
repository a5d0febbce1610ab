#pragma once

#include <stdexcept>
#include <string>

namespace qslit {

/// Machine-checkable failure categories used across the library.
enum class ErrorCode {
    non_finite,               ///< NaN/Inf reached an operation boundary
    zero_momentum,            ///< p0 = 0 makes lambda_B / arrival time undefined
    dimension_mismatch,       ///< unit conversion between incompatible dimensions
    evanescent_order,         ///< diffraction order with |sin theta| > 1
    below_threshold_order,    ///< energy peak order with p_n <= 0
    domain,                   ///< argument outside the formula's domain (t <= 0, y = 0, ...)
    geometry,                 ///< initial-state support does not fit the grid
    under_resolved,           ///< regularization width below grid resolution
    momentum_window,          ///< momentum grid cannot hold the state's bandwidth
    featureless,              ///< peak comparison requested but no peaks detected
    insufficient_oscillations,///< too few crossings for a period analysis
    sampling,                 ///< event sampling from a degenerate density
    unknown_scenario,         ///< catalog lookup failed
    bad_argument              ///< malformed or inconsistent user input
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace qslit
