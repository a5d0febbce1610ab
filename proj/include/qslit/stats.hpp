#pragma once

#include <cstdint>
#include <vector>

namespace qslit::stats {

/// Counter-based generator: SplitMix64 finalizer applied to (seed, counter).
/// Stateless and platform-independent; sample k of stream `seed` is mix(seed + k*gamma).
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0, 1) from the counter-based stream.
double uniform01(std::uint64_t seed, std::uint64_t counter);

/// Regularized upper incomplete gamma Q(a, x); survival function of the gamma family.
double gamma_q(double a, double x);

/// Chi-square goodness of fit of observed counts against expected counts.
/// Bins with expected count below `min_expected` are merged into their neighbor.
struct ChiSquareResult {
    double statistic;
    int dof;
    double p_value;
};
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& expected, double min_expected = 5.0);

/// Ordinary least squares y = slope * x + intercept.
struct LinearFit {
    double slope;
    double intercept;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qslit::stats
