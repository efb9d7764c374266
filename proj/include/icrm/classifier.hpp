#pragma once

#include "icrm/dynamics.hpp"
#include "icrm/textprep.hpp"

#include <memory>
#include <utility>

namespace icrm {

/// Online cross-regulation classifier: one repertoire plus the RNG that
/// drives slot layout and binding. Every processed message, training or
/// test, updates the populations. Not thread-safe; give each run its own
/// instance.
class CrossRegulationClassifier {
public:
    explicit CrossRegulationClassifier(IcrmConfig cfg = {}, std::shared_ptr<const StopwordList> stopwords = nullptr)
        : cfg_((cfg.validate(), cfg)), prep_(cfg_.n, cfg_.sampling, std::move(stopwords)), rng_(cfg_.seed) {}

    /// Resumes from persisted state.
    CrossRegulationClassifier(IcrmConfig cfg, std::shared_ptr<const StopwordList> stopwords, Repertoire rep, Rng rng)
        : CrossRegulationClassifier(cfg, std::move(stopwords)) {
        rep_ = std::move(rep);
        rng_ = rng;
    }

    /// Pre-processing, first-seen initialization, interaction, then decision
    /// on the post-interaction populations.
    Verdict process(const Message& msg, Stage stage) {
        const FeatureSample sample = prep_(msg, rng_);
        init_features(rep_, sample, stage, cfg_);
        const SlotArray slots = build_slot_array(sample, rep_, cfg_, rng_);
        interact(rep_, slots, cfg_);
        return decide(rep_, sample);
    }

    /// Processes a labelled message with the initial populations of its class.
    Verdict train(const Message& msg) { return process(msg, training_stage(msg.label)); }

    /// Processes a message with the test-stage initial populations.
    Verdict classify(const Message& msg) { return process(msg, Stage::test); }

    Label predict(const Message& msg) { return classify(msg).label; }

    const IcrmConfig& config() const { return cfg_; }
    const Preprocessor& preprocessor() const { return prep_; }
    const Repertoire& repertoire() const { return rep_; }
    Repertoire& repertoire() { return rep_; }
    const Rng& rng() const { return rng_; }
    Rng& rng() { return rng_; }

private:
    IcrmConfig cfg_;
    Preprocessor prep_;
    Repertoire rep_;
    Rng rng_;
};

}  // namespace icrm
