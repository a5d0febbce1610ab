#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qslit/series.hpp"

namespace qslit::detail {

/// Local maxima of a series with prominence filtering and parabolic sub-grid
/// refinement. `min_prominence` is relative to the series maximum. A peak's
/// prominence is its height above the higher of the two valleys separating it
/// from the nearest greater value (or the series end).
inline std::vector<double> refined_peak_positions(const Series& s, double min_prominence) {
    std::vector<double> out;
    const auto& y = s.y;
    const std::size_t n = y.size();
    if (n < 3) return out;
    const double threshold = min_prominence * *std::max_element(y.begin(), y.end());
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        double left_min = y[i], right_min = y[i];
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] > y[i]) break;
            left_min = std::min(left_min, y[j]);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] > y[i]) break;
            right_min = std::min(right_min, y[j]);
        }
        if (y[i] - std::max(left_min, right_min) < threshold) continue;
        double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
        double shift = denom == 0.0 ? 0.0 : 0.5 * (y[i - 1] - y[i + 1]) / denom;
        out.push_back(s.x[i] + shift * (s.x[i + 1] - s.x[i]));
    }
    return out;
}

} // namespace qslit::detail
