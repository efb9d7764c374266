#pragma once

// Seeded generator of labelled, timestamped corpora with controlled
// vocabulary overlap between the classes.

#include "icrm/porter.hpp"
#include "icrm/rng.hpp"
#include "icrm/textprep.hpp"
#include "icrm/types.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

namespace icrm {

struct SyntheticSpec {
    std::size_t messages_per_class = 1500;
    std::size_t ham_vocabulary = 200;
    std::size_t spam_vocabulary = 200;
    std::size_t shared_vocabulary = 0;
    /// Probability that a token comes from the shared vocabulary.
    double shared_fraction = 0.0;
    /// Probability that a token comes from the other class's vocabulary.
    double cross_fraction = 0.0;
    std::size_t min_words = 20;
    std::size_t max_words = 60;
    std::uint64_t seed = 7;
    Date start{2000, 1, 1};
};

/// Pseudo-words of three consonant-vowel syllables ending in 'a' or 'o'.
/// None is a stopword, all are at least six letters, and each is its own
/// Porter stem, so vocabularies stay disjoint after pre-processing.
class PseudoWordSource {
public:
    explicit PseudoWordSource(std::uint64_t seed) : rng_(seed) {}

    std::vector<std::string> take(std::size_t count) {
        static constexpr std::string_view consonants = "bdfgklmnprtvz";
        static constexpr std::string_view vowels = "aeio";
        static constexpr std::string_view finals = "ao";
        std::vector<std::string> out;
        while (out.size() < count) {
            std::string w;
            for (int s = 0; s < 3; ++s) {
                w.push_back(consonants[uniform_index(rng_, consonants.size())]);
                const auto& vs = s == 2 ? finals : vowels;
                w.push_back(vs[uniform_index(rng_, vs.size())]);
            }
            if (stem(w) != w || used_.contains(w)) continue;
            used_.insert(w);
            out.push_back(std::move(w));
        }
        return out;
    }

private:
    Rng rng_;
    std::unordered_set<std::string> used_;
};

struct SyntheticVocabulary {
    std::vector<std::string> ham;
    std::vector<std::string> spam;
    std::vector<std::string> shared;
};

inline SyntheticVocabulary synthetic_vocabulary(const SyntheticSpec& spec) {
    PseudoWordSource source(derive_seed(spec.seed, 0, 11));
    SyntheticVocabulary v;
    v.ham = source.take(spec.ham_vocabulary);
    v.spam = source.take(spec.spam_vocabulary);
    v.shared = source.take(spec.shared_vocabulary);
    return v;
}

inline Date add_days(Date d, int days) {
    using namespace std::chrono;
    const sys_days base = year{d.year} / month{static_cast<unsigned>(d.month)} / day{static_cast<unsigned>(d.day)};
    const year_month_day ymd{base + std::chrono::days{days}};
    return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
            static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

/// Message i of each class is dated start + i days. The first five words
/// form the subject.
inline Dataset make_synthetic_corpus(const SyntheticSpec& spec) {
    const auto vocab = synthetic_vocabulary(spec);
    Rng rng(derive_seed(spec.seed, 0, 12));
    Dataset ds;
    ds.name = "synthetic";
    for (std::size_t i = 0; i < spec.messages_per_class; ++i) {
        for (Label label : {Label::ham, Label::spam}) {
            const auto& own = label == Label::spam ? vocab.spam : vocab.ham;
            const auto& other = label == Label::spam ? vocab.ham : vocab.spam;
            const std::size_t len =
                spec.min_words + uniform_index(rng, spec.max_words - spec.min_words + 1);
            std::string subject, body;
            for (std::size_t k = 0; k < len; ++k) {
                const double u = uniform01(rng);
                const std::vector<std::string>* pool = &own;
                if (u < spec.shared_fraction && !vocab.shared.empty()) pool = &vocab.shared;
                else if (u < spec.shared_fraction + spec.cross_fraction && !other.empty()) pool = &other;
                const std::string& w = (*pool)[uniform_index(rng, pool->size())];
                std::string& dst = k < 5 ? subject : body;
                if (!dst.empty()) dst.push_back(' ');
                dst += w;
            }
            char id[32];
            std::snprintf(id, sizeof id, "%s-%05zu", std::string(to_string(label)).c_str(), i);
            ds.of(label).push_back(Message{id, add_days(spec.start, static_cast<int>(i)), label, subject, body});
        }
    }
    return ds;
}

}  // namespace icrm
