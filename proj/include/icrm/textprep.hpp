#pragma once

#include "icrm/detail/smart_stopwords.hpp"
#include "icrm/error.hpp"
#include "icrm/porter.hpp"
#include "icrm/rng.hpp"
#include "icrm/types.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace icrm {

inline constexpr std::size_t min_token_length = 3;

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline void append_tokens(std::string_view text, std::vector<std::string>& out) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t end = i;
        while (end < text.size() && !is_space(text[end])) ++end;
        std::size_t first = i;
        std::size_t last = end;
        while (first < last && !is_alnum(text[first])) ++first;
        while (last > first && !is_alnum(text[last - 1])) --last;
        if (last - first >= min_token_length) {
            std::string token(text.substr(first, last - first));
            for (char& c : token) c = to_lower(c);
            out.push_back(std::move(token));
        }
        i = end;
    }
}

}  // namespace detail

/// Splits subject then body on ASCII whitespace, trims non-alphanumeric
/// characters from both ends of every token, lowercases, and drops tokens
/// shorter than three characters. Order and duplicates are preserved; HTML
/// markup is not treated specially.
inline std::vector<std::string> tokenize(std::string_view subject, std::string_view body) {
    std::vector<std::string> tokens;
    detail::append_tokens(subject, tokens);
    detail::append_tokens(body, tokens);
    return tokens;
}

/// Set of words removed before stemming.
class StopwordList {
public:
    StopwordList() = default;

    template <typename Range>
    explicit StopwordList(const Range& words) {
        for (const auto& w : words) words_.emplace(w);
    }

    /// The bundled SMART list.
    static StopwordList smart() { return StopwordList(detail::smart_stopwords); }

    /// One word per line; blank lines and surrounding whitespace ignored.
    static StopwordList load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open stopword list " + path.string());
        StopwordList list;
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            auto last = line.find_last_not_of(" \t\r");
            std::string word = line.substr(first, last - first + 1);
            for (char& c : word) c = detail::to_lower(c);
            list.words_.insert(std::move(word));
        }
        return list;
    }

    bool contains(const std::string& word) const { return words_.contains(word); }
    std::size_t size() const { return words_.size(); }

    /// Sorted copy of the words, for persistence.
    std::vector<std::string> sorted_words() const {
        std::vector<std::string> out(words_.begin(), words_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const StopwordList& a, const StopwordList& b) { return a.words_ == b.words_; }

private:
    std::unordered_set<std::string> words_;
};

/// The features a message's antigen-presenting cell exposes: distinct stems,
/// at most n of them.
struct FeatureSample {
    std::vector<std::string> features;

    std::size_t size() const { return features.size(); }
    bool empty() const { return features.empty(); }
    friend bool operator==(const FeatureSample&, const FeatureSample&) = default;
};

enum class SamplingMode {
    first_last,  ///< first n/2 and last n/2 unique stems
    uniform,     ///< n unique stems drawn uniformly, kept in message order
};

/// Unique stems of a message in first-occurrence order, after stopword
/// removal (applied to the unstemmed token).
inline std::vector<std::string> unique_stems(const Message& msg, const StopwordList& stopwords) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& token : tokenize(msg.subject, msg.body)) {
        if (stopwords.contains(token)) continue;
        std::string s = stem(token);
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    return out;
}

/// First n/2 and last n/2 entries of `stems`, deduplicated. Since `stems`
/// holds distinct values the two halves never overlap; the union is still
/// taken so the rule also holds for arbitrary input.
inline std::vector<std::string> select_first_last(std::vector<std::string> stems, std::size_t n) {
    if (stems.size() <= n) return stems;
    const std::size_t half = n / 2;
    std::vector<std::string> out(stems.begin(), stems.begin() + static_cast<std::ptrdiff_t>(half));
    std::unordered_set<std::string> kept(out.begin(), out.end());
    for (auto it = stems.end() - static_cast<std::ptrdiff_t>(half); it != stems.end(); ++it)
        if (kept.insert(*it).second) out.push_back(std::move(*it));
    return out;
}

/// n entries of `stems` chosen uniformly without replacement, original order kept.
inline std::vector<std::string> select_uniform(std::vector<std::string> stems, std::size_t n, Rng& rng) {
    if (stems.size() <= n) return stems;
    std::vector<std::size_t> index(stems.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(rng, index.size() - i));
        std::swap(index[i], index[j]);
    }
    index.resize(n);
    std::sort(index.begin(), index.end());
    std::vector<std::string> out;
    out.reserve(n);
    for (auto i : index) out.push_back(std::move(stems[i]));
    return out;
}

/// Message to FeatureSample conversion with a fixed stopword list, cap n and
/// sampling mode. Stateless apart from its configuration; safe to share
/// across threads.
class Preprocessor {
public:
    Preprocessor() : Preprocessor(50) {}

    explicit Preprocessor(std::size_t n, SamplingMode mode = SamplingMode::first_last,
                          std::shared_ptr<const StopwordList> stopwords = nullptr)
        : n_(n), mode_(mode), stopwords_(stopwords ? std::move(stopwords) : default_stopwords()) {
        if (n_ < 2 || n_ % 2 != 0) throw ConfigError("feature cap n must be even and >= 2");
    }

    std::size_t cap() const { return n_; }
    SamplingMode mode() const { return mode_; }
    const StopwordList& stopwords() const { return *stopwords_; }
    const std::shared_ptr<const StopwordList>& stopwords_ptr() const { return stopwords_; }

    /// Deterministic first/last selection. In uniform mode use the overload
    /// taking an Rng.
    FeatureSample operator()(const Message& msg) const {
        return {select_first_last(unique_stems(msg, *stopwords_), n_)};
    }

    FeatureSample operator()(const Message& msg, Rng& rng) const {
        auto stems = unique_stems(msg, *stopwords_);
        if (mode_ == SamplingMode::uniform) return {select_uniform(std::move(stems), n_, rng)};
        return {select_first_last(std::move(stems), n_)};
    }

    static std::shared_ptr<const StopwordList> default_stopwords() {
        static const auto list = std::make_shared<const StopwordList>(StopwordList::smart());
        return list;
    }

private:
    std::size_t n_;
    SamplingMode mode_;
    std::shared_ptr<const StopwordList> stopwords_;
};

/// FeatureSample with the default stopword list and first/last selection.
inline FeatureSample preprocess(const Message& msg, std::size_t n) {
    return Preprocessor(n)(msg);
}

}  // namespace icrm
