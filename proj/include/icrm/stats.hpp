#pragma once

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace icrm {

/// Least-squares line y = intercept + slope·x over x = 0, 1, 2, ...
struct DriftSummary {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares against the series index, computed from centred
/// sums. R² = 1 - SS_res/SS_tot; a constant series gives slope 0, R² 0.
inline DriftSummary linear_fit(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 2) throw std::invalid_argument("linear_fit needs at least two points");
    const double count = static_cast<double>(n);
    const double x_mean = (count - 1.0) / 2.0;
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= count;

    bool constant = true;
    for (double v : y) constant = constant && v == y[0];
    if (constant) return {0.0, y[0], 0.0};

    double sxx = 0.0, sxy = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        const double dy = y[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        ss_tot += dy * dy;
    }
    DriftSummary fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * static_cast<double>(i));
        ss_res += r * r;
    }
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 0.0;
    return fit;
}

struct TTestResult {
    double t = 0.0;
    double p = 1.0;   ///< two-tailed
    std::size_t df = 0;
};

/// Two-tailed paired t-test on a - b with n - 1 degrees of freedom. The
/// p-value is I_{df/(df+t²)}(df/2, 1/2). Identical series give t = 0, p = 1;
/// a constant non-zero difference gives infinite t and p = 0.
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("paired t-test needs series of equal length");
    const std::size_t n = a.size();
    if (n < 2) throw std::invalid_argument("paired t-test needs at least two pairs");
    const double count = static_cast<double>(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
    mean /= count;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - mean;
        ss += d * d;
    }
    TTestResult out;
    out.df = n - 1;
    const double sd = std::sqrt(ss / static_cast<double>(out.df));
    if (sd == 0.0) {
        if (mean == 0.0) return {0.0, 1.0, out.df};
        out.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
        out.p = 0.0;
        return out;
    }
    out.t = mean / (sd / std::sqrt(count));
    const double df = static_cast<double>(out.df);
    out.p = boost::math::ibeta(df / 2.0, 0.5, df / (df + out.t * out.t));
    return out;
}

}  // namespace icrm
