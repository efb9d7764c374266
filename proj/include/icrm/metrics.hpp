#pragma once

#include "icrm/types.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace icrm {

/// Confusion counts with spam as the positive class.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    void add(Label actual, Label predicted) {
        if (actual == Label::spam) (predicted == Label::spam ? tp : fn) += 1;
        else (predicted == Label::spam ? fp : tn) += 1;
    }

    std::uint64_t total() const { return tp + tn + fp + fn; }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Rates stored as fractions in [0, 1].
struct RunMetrics {
    double f_score = 0.0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double pct_fp = 0.0;  ///< misclassified ham / ham evaluated
    double pct_fn = 0.0;  ///< misclassified spam / spam evaluated

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

namespace detail {
inline double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace detail

/// Precision TP/(TP+FP), recall TP/(TP+FN), F = 2PR/(P+R), accuracy
/// (TP+TN)/total. Any metric with a zero denominator is 0.
///
/// F is evaluated as 2TP/(2TP+FP+FN), which equals 2PR/(P+R) whenever TP > 0
/// and is a single correctly rounded division.
inline RunMetrics metrics_from_counts(const ConfusionCounts& c) {
    RunMetrics m;
    m.precision = detail::ratio(c.tp, c.tp + c.fp);
    m.recall = detail::ratio(c.tp, c.tp + c.fn);
    m.f_score = c.tp == 0 ? 0.0 : detail::ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    m.accuracy = detail::ratio(c.tp + c.tn, c.total());
    m.pct_fp = detail::ratio(c.fp, c.fp + c.tn);
    m.pct_fn = detail::ratio(c.fn, c.fn + c.tp);
    return m;
}

inline ConfusionCounts count(const std::vector<Label>& actual, const std::vector<Label>& predicted) {
    ConfusionCounts c;
    for (std::size_t i = 0; i < actual.size() && i < predicted.size(); ++i) c.add(actual[i], predicted[i]);
    return c;
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  ///< sample standard deviation (n - 1); 0 for n < 2
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd out;
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return out;
}

/// Mean and sd of every RunMetrics field over a series.
struct MetricSummary {
    MeanSd f_score, accuracy, precision, recall, pct_fp, pct_fn;
};

inline MetricSummary summarize(const std::vector<RunMetrics>& series) {
    auto column = [&](double RunMetrics::*field) {
        std::vector<double> xs;
        xs.reserve(series.size());
        for (const auto& m : series) xs.push_back(m.*field);
        return mean_sd(xs);
    };
    return {column(&RunMetrics::f_score), column(&RunMetrics::accuracy), column(&RunMetrics::precision),
            column(&RunMetrics::recall),  column(&RunMetrics::pct_fp),   column(&RunMetrics::pct_fn)};
}

inline std::vector<double> column(const std::vector<RunMetrics>& series, double RunMetrics::*field) {
    std::vector<double> xs;
    xs.reserve(series.size());
    for (const auto& m : series) xs.push_back(m.*field);
    return xs;
}

}  // namespace icrm
