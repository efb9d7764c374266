#pragma once

// Multinomial Naive Bayes over Boolean per-message feature occurrences,
// sharing the FeatureSample pipeline with the cross-regulation classifier.

#include "icrm/error.hpp"
#include "icrm/textprep.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>

namespace icrm {

class NbModel {
public:
    using Counts = std::array<std::uint64_t, 2>;  // indexed by class: ham, spam

    static constexpr std::size_t index(Label label) { return label == Label::spam ? 1 : 0; }

    /// Counts each distinct sampled feature once for `label`.
    void add(const FeatureSample& sample, Label label) {
        const auto c = index(label);
        ++doc_count_[c];
        for (const auto& f : sample.features) {
            ++feature_count_[f][c];
            ++total_features_[c];
        }
    }

    std::uint64_t doc_count(Label label) const { return doc_count_[index(label)]; }

    std::uint64_t feature_doc_count(Label label, const std::string& feature) const {
        auto it = feature_count_.find(feature);
        return it == feature_count_.end() ? 0 : it->second[index(label)];
    }

    /// Σ_g feature_doc_count(label, g).
    std::uint64_t total_feature_count(Label label) const { return total_features_[index(label)]; }

    std::size_t vocabulary_size() const { return feature_count_.size(); }
    bool in_vocabulary(const std::string& feature) const { return feature_count_.contains(feature); }
    bool trained() const { return doc_count_[0] > 0 && doc_count_[1] > 0; }

    /// Add-one estimate (1 + count(c, f)) / (|V| + Σ_g count(c, g)).
    double log_likelihood(Label label, const std::string& feature) const {
        const double num = 1.0 + static_cast<double>(feature_doc_count(label, feature));
        const double den = static_cast<double>(vocabulary_size()) + static_cast<double>(total_feature_count(label));
        return std::log(num / den);
    }

    double log_prior(Label label) const {
        return std::log(static_cast<double>(doc_count(label)) /
                        static_cast<double>(doc_count_[0] + doc_count_[1]));
    }

    std::map<std::string, Counts> sorted_counts() const { return {feature_count_.begin(), feature_count_.end()}; }

    /// Rebuilds a model from persisted counts.
    static NbModel from_counts(Counts docs, const std::map<std::string, Counts>& features) {
        NbModel m;
        m.doc_count_ = docs;
        for (const auto& [f, c] : features) {
            m.feature_count_.emplace(f, c);
            m.total_features_[0] += c[0];
            m.total_features_[1] += c[1];
        }
        return m;
    }

    friend bool operator==(const NbModel&, const NbModel&) = default;

private:
    Counts doc_count_{0, 0};
    Counts total_features_{0, 0};
    std::unordered_map<std::string, Counts> feature_count_;
};

/// P(spam | sample): class prior times the product of smoothed feature
/// likelihoods, normalised over both classes. Evaluated in log space.
inline double nb_posterior(const NbModel& model, const FeatureSample& sample) {
    if (!model.trained()) throw DataError("naive Bayes model needs training messages of both classes");
    double log_spam = model.log_prior(Label::spam);
    double log_ham = model.log_prior(Label::ham);
    // With an empty vocabulary the estimate is 1/0 for both classes; the
    // features carry no evidence and the prior decides.
    if (model.vocabulary_size() == 0) return 1.0 / (1.0 + std::exp(log_ham - log_spam));
    for (const auto& f : sample.features) {
        log_spam += model.log_likelihood(Label::spam, f);
        log_ham += model.log_likelihood(Label::ham, f);
    }
    // spam / (spam + ham) = 1 / (1 + exp(ham - spam))
    return 1.0 / (1.0 + std::exp(log_ham - log_spam));
}

/// Batch training over a message range, each reduced by `prep`.
template <typename Range>
NbModel nb_train(const Range& messages, const Preprocessor& prep) {
    NbModel model;
    for (const Message& m : messages) model.add(prep(m), m.label);
    return model;
}

template <typename Range>
NbModel nb_train(const Range& messages, std::size_t n) {
    return nb_train(messages, Preprocessor(n));
}

/// Spam iff the posterior strictly exceeds 0.5.
inline Label nb_decide(double posterior) { return posterior > 0.5 ? Label::spam : Label::ham; }

inline Label nb_classify(const NbModel& model, const Message& msg, const Preprocessor& prep) {
    return nb_decide(nb_posterior(model, prep(msg)));
}

inline Label nb_classify(const NbModel& model, const Message& msg, std::size_t n) {
    return nb_classify(model, msg, Preprocessor(n));
}

/// Stream adapter for the evaluation harness: learns from training messages
/// and stays frozen while classifying.
class NaiveBayesClassifier {
public:
    explicit NaiveBayesClassifier(Preprocessor prep = Preprocessor{}) : prep_(std::move(prep)) {}
    NaiveBayesClassifier(Preprocessor prep, NbModel model) : prep_(std::move(prep)), model_(std::move(model)) {}

    void train(const Message& msg) { model_.add(prep_(msg), msg.label); }
    double posterior(const Message& msg) const { return nb_posterior(model_, prep_(msg)); }
    Label predict(const Message& msg) const { return nb_decide(posterior(msg)); }

    const NbModel& model() const { return model_; }
    const Preprocessor& preprocessor() const { return prep_; }

private:
    Preprocessor prep_;
    NbModel model_;
};

}  // namespace icrm
