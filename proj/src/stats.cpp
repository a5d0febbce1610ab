#include "qslit/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "qslit/error.hpp"

namespace qslit::stats {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return (splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

double gamma_q(double a, double x) { return boost::math::gamma_q(a, x); }

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected,
                               double min_expected) {
    if (observed.size() != expected.size() || observed.empty())
        fail(ErrorCode::bad_argument, "chi-square requires matching non-empty observed/expected");

    // Merge low-expectation bins left to right.
    std::vector<double> exp_m;
    std::vector<double> obs_m;
    double acc_e = 0.0, acc_o = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        acc_e += expected[i];
        acc_o += static_cast<double>(observed[i]);
        if (acc_e >= min_expected) {
            exp_m.push_back(acc_e);
            obs_m.push_back(acc_o);
            acc_e = acc_o = 0.0;
        }
    }
    if (acc_e > 0.0) {
        if (exp_m.empty()) {
            exp_m.push_back(acc_e);
            obs_m.push_back(acc_o);
        } else {
            exp_m.back() += acc_e;
            obs_m.back() += acc_o;
        }
    }
    if (exp_m.size() < 2) fail(ErrorCode::bad_argument, "chi-square needs at least 2 usable bins");

    double stat = 0.0;
    for (std::size_t i = 0; i < exp_m.size(); ++i) {
        double d = obs_m[i] - exp_m[i];
        stat += d * d / exp_m[i];
    }
    int dof = static_cast<int>(exp_m.size()) - 1;
    return {stat, dof, gamma_q(0.5 * dof, 0.5 * stat)};
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::bad_argument, "fit needs >= 2 points");
    double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) fail(ErrorCode::bad_argument, "degenerate abscissa in fit");
    double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

} // namespace qslit::stats
