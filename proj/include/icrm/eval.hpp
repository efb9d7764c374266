#pragma once

// Static (repeated block) and dynamic (sliding window) evaluation protocols.

#include "icrm/corpus.hpp"
#include "icrm/error.hpp"
#include "icrm/metrics.hpp"
#include "icrm/rng.hpp"
#include "icrm/stats.hpp"

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace icrm {

/// Anything that learns from labelled messages and predicts a label.
/// predict may update internal state (online learners).
template <typename C>
concept StreamClassifier = requires(C c, const Message& m) {
    c.train(m);
    { c.predict(m) } -> std::convertible_to<Label>;
};

/// Creates a fresh classifier for the run with the given seed.
template <typename F>
concept ClassifierFactory = requires(F f, std::uint64_t seed) {
    { f(seed) } -> StreamClassifier;
};

struct StaticOptions {
    std::size_t runs = 10;
    std::size_t train_per_class = 100;
    std::size_t test_size = 200;
    double spam_ratio = 0.5;
    bool shuffle_test = false;
    /// Score only a class-balanced subset when the test block is unbalanced.
    bool balance = true;
    std::uint64_t seed = 42;
    std::size_t jobs = 1;
};

struct StaticReport {
    std::vector<ConfusionCounts> counts;
    std::vector<RunMetrics> runs;
    MetricSummary summary;
};

/// Offset of run k: runs advance by one training block per class.
inline std::size_t run_offset(std::size_t run, std::size_t train_per_class) { return run * train_per_class; }

namespace detail {

/// Calls body(i) for i in [0, count) on up to `jobs` threads. The first
/// exception (lowest index) is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, std::size_t jobs, Body body) {
    std::vector<std::exception_ptr> errors(count);
    auto guarded = [&](std::size_t i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) guarded(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < count;) guarded(i);
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::vector<Label> labels_of(const std::vector<Message>& stream) {
    std::vector<Label> out;
    out.reserve(stream.size());
    for (const auto& m : stream) out.push_back(m.label);
    return out;
}

}  // namespace detail

/// Seeds of run k: the classifier gets seed + k; shuffling and balancing use
/// streams derived from it.
inline std::uint64_t run_seed(std::uint64_t seed, std::size_t run) { return seed + run; }

/// One static run: train on the split's training block, then classify the
/// test block in order (or shuffled) and count the outcomes.
template <ClassifierFactory Factory>
ConfusionCounts run_static_once(const Dataset& ds, Factory& factory, const StaticOptions& opt, std::size_t run) {
    const std::uint64_t seed = run_seed(opt.seed, run);
    Split split = make_split(ds, {opt.train_per_class, opt.test_size, opt.spam_ratio,
                                  run_offset(run, opt.train_per_class)});
    if (opt.shuffle_test) {
        Rng rng(derive_seed(seed, run, 1));
        shuffle(std::span<Message>(split.test), rng);
    }
    auto clf = factory(seed);
    for (const auto& m : split.train) clf.train(m);
    std::vector<Label> predicted;
    predicted.reserve(split.test.size());
    for (const auto& m : split.test) predicted.push_back(clf.predict(m));
    const auto actual = detail::labels_of(split.test);

    if (!opt.balance) return count(actual, predicted);
    Rng rng(derive_seed(seed, run, 2));
    ConfusionCounts c;
    for (auto i : balanced_subset(actual, rng)) c.add(actual[i], predicted[i]);
    return c;
}

/// Repeated train/test runs; run k uses the block at offset k·train_per_class
/// and a fresh classifier from `factory(seed + k)`. Runs may execute in
/// parallel; results are always reported in run order.
template <ClassifierFactory Factory>
StaticReport eval_static(const Dataset& ds, Factory factory, const StaticOptions& opt) {
    if (opt.runs == 0) throw ConfigError("at least one run is required");
    if (opt.train_per_class == 0 || opt.test_size == 0) throw ConfigError("training and test sizes must be positive");
    check_split_feasible(ds, {opt.train_per_class, opt.test_size, opt.spam_ratio,
                              run_offset(opt.runs - 1, opt.train_per_class)});
    StaticReport report;
    report.counts.resize(opt.runs);
    detail::parallel_for(opt.runs, opt.jobs, [&](std::size_t k) {
        report.counts[k] = run_static_once(ds, factory, opt, k);
    });
    for (const auto& c : report.counts) report.runs.push_back(metrics_from_counts(c));
    report.summary = summarize(report.runs);
    return report;
}

struct DynamicOptions {
    std::size_t train_per_class = 100;
    std::size_t window = 200;
    std::size_t shift = 10;
    std::uint64_t seed = 42;
};

struct WindowMetrics {
    std::size_t start = 0;
    ConfusionCounts counts;
    RunMetrics metrics;
};

struct DynamicReport {
    std::size_t stream_length = 0;
    std::vector<WindowMetrics> windows;
    MetricSummary summary;
    DriftSummary fp_drift;
    DriftSummary fn_drift;
};

/// Number of full windows [s, s + window) with s = 0, shift, 2·shift, ...
inline std::size_t window_count(std::size_t stream_length, std::size_t window, std::size_t shift) {
    if (shift == 0) throw ConfigError("window shift must be positive");
    if (window == 0 || window > stream_length) return 0;
    return (stream_length - window) / shift + 1;
}

/// Metrics of every full window over a prediction sequence, with least-squares
/// drift of %FP and %FN against the window index.
inline DynamicReport sliding_windows(const std::vector<Label>& actual, const std::vector<Label>& predicted,
                                     std::size_t window, std::size_t shift) {
    if (actual.size() != predicted.size()) throw std::invalid_argument("label sequences differ in length");
    if (window == 0) throw ConfigError("window must be positive");
    if (window > actual.size())
        throw DataError("window of " + std::to_string(window) + " exceeds validation stream of " +
                        std::to_string(actual.size()));
    DynamicReport report;
    report.stream_length = actual.size();
    const std::size_t windows = window_count(actual.size(), window, shift);
    report.windows.reserve(windows);
    for (std::size_t w = 0; w < windows; ++w) {
        WindowMetrics wm;
        wm.start = w * shift;
        for (std::size_t i = wm.start; i < wm.start + window; ++i) wm.counts.add(actual[i], predicted[i]);
        wm.metrics = metrics_from_counts(wm.counts);
        report.windows.push_back(wm);
    }
    std::vector<RunMetrics> series;
    series.reserve(windows);
    for (const auto& w : report.windows) series.push_back(w.metrics);
    report.summary = summarize(series);
    auto drift = [&](double RunMetrics::*field) {
        const auto ys = column(series, field);
        if (ys.size() < 2) return DriftSummary{0.0, ys.empty() ? 0.0 : ys[0], 0.0};
        return linear_fit(ys);
    };
    report.fp_drift = drift(&RunMetrics::pct_fp);
    report.fn_drift = drift(&RunMetrics::pct_fn);
    return report;
}

/// The validation stream left after the first `train_per_class` messages of
/// each class: all remaining messages, ham/spam interleaved.
inline std::vector<Message> validation_stream(const Dataset& ds, std::size_t train_per_class) {
    auto tail = [&](const std::vector<Message>& v) {
        return std::vector<Message>(v.begin() + static_cast<std::ptrdiff_t>(train_per_class), v.end());
    };
    return interleave_classes(tail(ds.ham), tail(ds.spam));
}

/// Trains once on the first `train_per_class` messages per class, then
/// classifies every remaining message exactly once in order and scores the
/// sliding windows.
template <ClassifierFactory Factory>
DynamicReport eval_dynamic(const Dataset& ds, Factory factory, const DynamicOptions& opt) {
    if (opt.shift == 0) throw ConfigError("window shift must be positive");
    if (opt.window == 0) throw ConfigError("window must be positive");
    for (Label label : {Label::ham, Label::spam})
        if (ds.of(label).size() < opt.train_per_class)
            throw DataError("insufficient " + std::string(to_string(label)) + " messages for training: need " +
                            std::to_string(opt.train_per_class) + ", have " + std::to_string(ds.of(label).size()));
    const auto stream = validation_stream(ds, opt.train_per_class);
    if (opt.window > stream.size())
        throw DataError("window of " + std::to_string(opt.window) + " exceeds validation stream of " +
                        std::to_string(stream.size()));
    const auto train = interleave_classes(
        std::vector<Message>(ds.ham.begin(), ds.ham.begin() + static_cast<std::ptrdiff_t>(opt.train_per_class)),
        std::vector<Message>(ds.spam.begin(), ds.spam.begin() + static_cast<std::ptrdiff_t>(opt.train_per_class)));

    auto clf = factory(run_seed(opt.seed, 0));
    for (const auto& m : train) clf.train(m);
    std::vector<Label> predicted;
    predicted.reserve(stream.size());
    for (const auto& m : stream) predicted.push_back(clf.predict(m));
    return sliding_windows(detail::labels_of(stream), predicted, opt.window, opt.shift);
}

/// Paired t-tests of two static reports over matching runs.
struct Comparison {
    TTestResult f_score;
    TTestResult accuracy;
};

inline Comparison compare(const StaticReport& a, const StaticReport& b) {
    const auto fa = column(a.runs, &RunMetrics::f_score), fb = column(b.runs, &RunMetrics::f_score);
    const auto aa = column(a.runs, &RunMetrics::accuracy), ab = column(b.runs, &RunMetrics::accuracy);
    return {paired_t_test(fa, fb), paired_t_test(aa, ab)};
}

}  // namespace icrm
