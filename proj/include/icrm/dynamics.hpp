#pragma once

// Effector/regulatory population dynamics over per-message slot arrays.

#include "icrm/error.hpp"
#include "icrm/rng.hpp"
#include "icrm/textprep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace icrm {

/// Which initial populations a first-seen feature receives.
enum class Stage { train_ham, train_spam, test };

inline Stage training_stage(Label label) {
    return label == Label::spam ? Stage::train_spam : Stage::train_ham;
}

struct Population {
    double effector = 0.0;
    double regulatory = 0.0;

    friend bool operator==(const Population&, const Population&) = default;
};

struct IcrmConfig {
    std::size_t n = 50;       ///< feature sample cap, even
    std::size_t n_a = 10;     ///< slots per sampled feature
    Population init_ham{6.0, 12.0};
    Population init_spam{6.0, 5.0};
    Population init_test{6.0, 5.0};
    double proliferation = 1.0;  ///< population added per proliferating cell
    double death_rate = 0.0;     ///< per-message multiplicative decay, [0, 1)
    SamplingMode sampling = SamplingMode::first_last;
    std::uint64_t seed = 42;

    const Population& initial(Stage stage) const {
        switch (stage) {
        case Stage::train_ham: return init_ham;
        case Stage::train_spam: return init_spam;
        default: return init_test;
        }
    }

    /// Throws ConfigError on the first violated invariant.
    void validate() const {
        if (n < 2 || n % 2 != 0) throw ConfigError("n must be even and >= 2");
        if (n_a < 1) throw ConfigError("n_A must be >= 1");
        auto non_negative = [](const Population& p) { return p.effector >= 0.0 && p.regulatory >= 0.0; };
        if (!non_negative(init_ham) || !non_negative(init_spam) || !non_negative(init_test))
            throw ConfigError("initial populations must be non-negative");
        if (!(init_ham.effector < init_ham.regulatory)) throw ConfigError("E0_ham must be less than R0_ham");
        if (!(init_spam.effector > init_spam.regulatory)) throw ConfigError("E0_spam must exceed R0_spam");
        if (!(init_test.effector > init_test.regulatory)) throw ConfigError("E0_test must exceed R0_test");
        if (!(proliferation > 0.0) || !std::isfinite(proliferation)) throw ConfigError("proliferation must be positive");
        if (!(death_rate >= 0.0 && death_rate < 1.0)) throw ConfigError("death rate must lie in [0, 1)");
    }
};

/// Populations below this after decay are treated as extinct.
inline constexpr double extinction_threshold = 1e-12;

/// Per-feature (E, R) table; the whole memory of the classifier. Entries are
/// never removed.
class Repertoire {
public:
    using Table = std::unordered_map<std::string, Population>;

    bool contains(const std::string& feature) const { return table_.contains(feature); }

    const Population* find(const std::string& feature) const {
        auto it = table_.find(feature);
        return it == table_.end() ? nullptr : &it->second;
    }

    const Population& at(const std::string& feature) const { return table_.at(feature); }
    Population& at(const std::string& feature) { return table_.at(feature); }

    /// Inserts `pop` for `feature` unless present; returns true on insertion.
    bool try_insert(const std::string& feature, Population pop) { return table_.try_emplace(feature, pop).second; }

    /// Sets a feature unconditionally; used when restoring snapshots and in tests.
    void set(const std::string& feature, Population pop) { table_[feature] = pop; }

    /// Multiplies every population by (1 - rate); pairs that fall below the
    /// extinction threshold clamp to zero.
    void decay(double rate) {
        const double keep = 1.0 - rate;
        for (auto& [feature, pop] : table_) {
            pop.effector *= keep;
            pop.regulatory *= keep;
            if (pop.effector < extinction_threshold && pop.regulatory < extinction_threshold) pop = {};
        }
    }

    std::size_t size() const { return table_.size(); }
    bool empty() const { return table_.empty(); }
    const Table& table() const { return table_; }

    /// Entries ordered by feature, for stable output.
    std::map<std::string, Population> sorted() const { return {table_.begin(), table_.end()}; }

    friend bool operator==(const Repertoire&, const Repertoire&) = default;

private:
    Table table_;
};

/// Adds each sample feature absent from `rep` with the stage's initial
/// populations; features already present keep theirs.
inline void init_features(Repertoire& rep, const FeatureSample& sample, Stage stage, const IcrmConfig& cfg) {
    const Population& init = cfg.initial(stage);
    for (const auto& f : sample.features) rep.try_insert(f, init);
}

enum class Binding : std::uint8_t { empty, effector, regulatory };

struct Slot {
    std::uint32_t feature;  ///< index into SlotArray::features
    Binding bound;

    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Antigen-presentation array of one message: n_A slots per sampled feature,
/// in shuffled order, each holding the cell type bound to it.
struct SlotArray {
    std::vector<std::string> features;
    std::vector<Slot> slots;
};

/// Lays out n_A slots per feature, shuffles them uniformly, then binds each
/// slot to an effector with probability E/(E+R) and to a regulatory cell
/// otherwise. A feature with no cells leaves its slots empty.
///
/// RNG draws: one shuffle of the whole array, then one uniform per slot whose
/// feature has cells, in array order.
inline SlotArray build_slot_array(const FeatureSample& sample, const Repertoire& rep, const IcrmConfig& cfg, Rng& rng) {
    SlotArray array;
    array.features = sample.features;
    array.slots.reserve(sample.size() * cfg.n_a);
    for (std::uint32_t i = 0; i < sample.size(); ++i)
        for (std::size_t k = 0; k < cfg.n_a; ++k) array.slots.push_back({i, Binding::empty});
    shuffle(std::span<Slot>(array.slots), rng);

    std::vector<double> effector_share(sample.size(), -1.0);
    for (std::uint32_t i = 0; i < sample.size(); ++i) {
        const Population* pop = rep.find(sample.features[i]);
        if (!pop) throw std::logic_error("feature '" + sample.features[i] + "' missing from repertoire");
        const double total = pop->effector + pop->regulatory;
        if (total > 0.0) effector_share[i] = pop->effector / total;
    }
    for (auto& slot : array.slots) {
        const double share = effector_share[slot.feature];
        if (share < 0.0) continue;
        slot.bound = uniform01(rng) < share ? Binding::effector : Binding::regulatory;
    }
    return array;
}

/// Applies the pairwise interaction rules to consecutive slot pairs (0,1),
/// (2,3), ...; a trailing odd slot forms a pair on its own.
///
///   E with E, or E alone  -> each effector's feature gains `proliferation` E
///   E with R              -> the regulatory cell's feature gains R; E unchanged
///   R with R, R alone     -> nothing
///
/// All gains are computed from the array as given and applied together, then
/// every feature in the repertoire decays by the configured death rate.
inline void interact(Repertoire& rep, const SlotArray& array, const IcrmConfig& cfg) {
    const double p = cfg.proliferation;
    std::vector<Population> gain(array.features.size());
    const auto& slots = array.slots;
    for (std::size_t i = 0; i < slots.size(); i += 2) {
        const Slot& a = slots[i];
        const Slot* b = i + 1 < slots.size() ? &slots[i + 1] : nullptr;
        const Binding bb = b ? b->bound : Binding::empty;
        const bool a_effector = a.bound == Binding::effector;
        const bool b_effector = bb == Binding::effector;
        if (a_effector && bb == Binding::regulatory) {
            gain[b->feature].regulatory += p;
        } else if (b_effector && a.bound == Binding::regulatory) {
            gain[a.feature].regulatory += p;
        } else {
            if (a_effector) gain[a.feature].effector += p;
            if (b_effector) gain[b->feature].effector += p;
        }
    }
    for (std::size_t i = 0; i < gain.size(); ++i) {
        if (gain[i].effector == 0.0 && gain[i].regulatory == 0.0) continue;
        Population& pop = rep.at(array.features[i]);
        pop.effector += gain[i].effector;
        pop.regulatory += gain[i].regulatory;
    }
    if (cfg.death_rate > 0.0) rep.decay(cfg.death_rate);
}

/// (R - E) / sqrt(R² + E²), in [-1, 1]; non-positive marks a spam feature.
/// Zero when both populations are zero.
inline double score_feature(double effector, double regulatory) {
    const double norm = std::hypot(regulatory, effector);
    if (norm == 0.0) return 0.0;
    return std::clamp((regulatory - effector) / norm, -1.0, 1.0);
}

inline double score_feature(const Population& pop) { return score_feature(pop.effector, pop.regulatory); }

struct FeatureScore {
    std::string feature;
    Population population;
    double score = 0.0;
};

struct Verdict {
    double score = 0.0;  ///< sum of per-feature scores
    std::vector<FeatureScore> per_feature;
    Label label = Label::spam;
};

/// Scores the sampled features against current populations. A message is
/// spam iff its summed score is not positive, so an empty sample is spam.
inline Verdict decide(const Repertoire& rep, const FeatureSample& sample) {
    Verdict v;
    v.per_feature.reserve(sample.size());
    for (const auto& f : sample.features) {
        const Population* pop = rep.find(f);
        const Population value = pop ? *pop : Population{};
        const double s = score_feature(value);
        v.per_feature.push_back({f, value, s});
        v.score += s;
    }
    v.label = v.score <= 0.0 ? Label::spam : Label::ham;
    return v;
}

}  // namespace icrm
