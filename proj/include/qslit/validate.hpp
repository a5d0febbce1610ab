#pragma once

#include <string>
#include <vector>

namespace qslit::validate {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;  ///< the observed discrepancy (or p-value, see detail)
    double threshold = 0.0; ///< the bound it was compared against
    std::string detail;
};

struct Options {
    int grid_points_override = 0; ///< force the numeric grids to this size (0 = automatic)
};

// Analytic-vs-numeric cross checks. Each returns a result instead of throwing;
// guard violations show up as failed checks with the error message in `detail`.
CheckResult check_unitarity(const Options& opt = {});
CheckResult check_semigroup(const Options& opt = {});
CheckResult check_gaussian_spreading(const Options& opt = {});
CheckResult check_delta_limit_space(const Options& opt = {});
CheckResult check_delta_limit_time(const Options& opt = {});
CheckResult check_shutter_oracle(const Options& opt = {});
CheckResult check_fig2_transient_periods(const Options& opt = {});
CheckResult check_faddeeva_fresnel_consistency(const Options& opt = {});
CheckResult check_visibility(const Options& opt = {});
CheckResult check_single_slit_flatness(const Options& opt = {});
CheckResult check_phase_covariance(const Options& opt = {});
CheckResult check_event_accumulation(const Options& opt = {});
CheckResult check_determinism(const Options& opt = {});
CheckResult check_grid_guard(const Options& opt = {});

std::vector<CheckResult> run_all(const Options& opt = {});

} // namespace qslit::validate
