#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qslit/error.hpp"

namespace qslit {

/// Ordered (abscissa, value) pairs with axis labels and units.
/// The universal output record of the toolkit.
struct Series {
    std::string x_name;
    std::string x_unit;
    std::string y_name;
    std::string y_unit;
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }

    void reserve(std::size_t n) {
        x.reserve(n);
        y.reserve(n);
    }
    void push_back(double xi, double yi) {
        x.push_back(xi);
        y.push_back(yi);
    }

    double max_value() const { return *std::max_element(y.begin(), y.end()); }
    double min_value() const { return *std::min_element(y.begin(), y.end()); }

    std::size_t argmax() const {
        return static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    }

    /// Linear interpolation of y at abscissa value xq; clamps outside the range.
    double at(double xq) const;

    /// Copy rescaled so the maximum value is 1. Fails on all-zero series.
    Series peak_normalized() const;
};

inline double Series::at(double xq) const {
    if (empty()) fail(ErrorCode::bad_argument, "interpolation on empty series");
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    auto it = std::lower_bound(x.begin(), x.end(), xq);
    std::size_t hi = static_cast<std::size_t>(it - x.begin());
    std::size_t lo = hi - 1;
    double t = (xq - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + t * (y[hi] - y[lo]);
}

inline Series Series::peak_normalized() const {
    Series out = *this;
    double m = max_value();
    if (m <= 0.0) fail(ErrorCode::sampling, "cannot peak-normalize a non-positive series");
    for (auto& v : out.y) v /= m;
    return out;
}

} // namespace qslit
