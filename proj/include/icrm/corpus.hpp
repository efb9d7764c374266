#pragma once

#include "icrm/error.hpp"
#include "icrm/rng.hpp"
#include "icrm/types.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace icrm {

struct IngestResult {
    Dataset dataset;
    /// Files skipped because their name carries no `NNNN.YYYY-MM-DD.` date.
    std::vector<std::string> rejected;
};

namespace detail {

/// Copies valid UTF-8 sequences through and reinterprets every other byte as
/// Latin-1, so arbitrary mailbox bytes become valid UTF-8.
inline std::string to_utf8(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    auto byte = [&](std::size_t i) { return static_cast<unsigned char>(in[i]); };
    std::size_t i = 0;
    while (i < in.size()) {
        const unsigned char c = byte(i);
        std::size_t len = 0;
        if (c < 0x80) len = 1;
        else if (c >= 0xC2 && c <= 0xDF) len = 2;
        else if (c >= 0xE0 && c <= 0xEF) len = 3;
        else if (c >= 0xF0 && c <= 0xF4) len = 4;
        bool valid = len > 0 && i + len <= in.size();
        for (std::size_t k = 1; valid && k < len; ++k) valid = (byte(i + k) & 0xC0) == 0x80;
        if (valid && len == 3) {
            const unsigned char c1 = byte(i + 1);
            valid = !(c == 0xE0 && c1 < 0xA0) && !(c == 0xED && c1 >= 0xA0);
        } else if (valid && len == 4) {
            const unsigned char c1 = byte(i + 1);
            valid = !(c == 0xF0 && c1 < 0x90) && !(c == 0xF4 && c1 >= 0x90);
        }
        if (valid) {
            out.append(in.substr(i, len));
            i += len;
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
            ++i;
        }
    }
    return out;
}

/// Date embedded in an Enron-spam file name, `NNNN.YYYY-MM-DD.<tag>.txt`.
inline std::optional<Date> date_from_filename(std::string_view name) {
    const auto dot = name.find('.');
    if (dot == 0 || dot == std::string_view::npos) return std::nullopt;
    for (std::size_t i = 0; i < dot; ++i)
        if (name[i] < '0' || name[i] > '9') return std::nullopt;
    if (name.size() < dot + 12 || name[dot + 11] != '.') return std::nullopt;
    return Date::parse(name.substr(dot + 1, 10));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace detail

/// Splits raw mail text into subject and body. A leading `Subject:` line
/// becomes the subject; everything after it is the body.
inline std::pair<std::string, std::string> split_subject(std::string_view text) {
    constexpr std::string_view tag = "Subject:";
    if (!text.starts_with(tag)) return {std::string(), std::string(text)};
    const auto eol = text.find('\n');
    std::string_view line = text.substr(tag.size(), eol == std::string_view::npos ? std::string_view::npos : eol - tag.size());
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.remove_suffix(1);
    std::string_view body = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    return {std::string(line), std::string(body)};
}

/// Reads `<root>/ham` and `<root>/spam`, orders each class by (date, file
/// name) and keeps the first `limit_per_class` messages of each.
inline IngestResult ingest_enron_dir(const std::filesystem::path& root, std::size_t limit_per_class) {
    namespace fs = std::filesystem;
    IngestResult result;
    result.dataset.name = root.filename().empty() ? root.parent_path().filename().string() : root.filename().string();
    for (Label label : {Label::ham, Label::spam}) {
        const fs::path dir = root / std::string(to_string(label));
        if (!fs::is_directory(dir))
            throw DataError("missing " + std::string(to_string(label)) + "/ directory under " + root.string());
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file()) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        auto& out = result.dataset.of(label);
        for (const auto& file : files) {
            const std::string name = file.filename().string();
            auto date = detail::date_from_filename(name);
            if (!date) {
                result.rejected.push_back((fs::path(std::string(to_string(label))) / name).string());
                continue;
            }
            auto text = detail::to_utf8(detail::read_file(file));
            auto [subject, body] = split_subject(text);
            std::string id = file.stem().string();
            out.push_back(Message{std::move(id), *date, label, std::move(subject), std::move(body)});
        }
        sort_chronologically(out);
        if (out.size() > limit_per_class) out.resize(limit_per_class);
    }
    return result;
}

/// Writes one JSON object per line (ham first, then spam), fields id,
/// timestamp, label, subject, body. Embedded newlines are escaped by the
/// JSON encoding.
inline void write_canonical(std::ostream& out, const Dataset& ds) {
    for (Label label : {Label::ham, Label::spam}) {
        for (const auto& m : ds.of(label)) {
            nlohmann::ordered_json j;
            j["id"] = m.id;
            j["timestamp"] = m.timestamp.to_string();
            j["label"] = to_string(m.label);
            j["subject"] = m.subject;
            j["body"] = m.body;
            out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
        }
    }
}

inline void write_canonical(const std::filesystem::path& path, const Dataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    write_canonical(out, ds);
    if (!out) throw DataError("write failed for " + path.string());
}

inline Dataset read_canonical(std::istream& in, std::string name = {}) {
    Dataset ds;
    ds.name = std::move(name);
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw DataError("line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail(std::string("malformed record: ") + e.what());
        }
        if (!j.is_object()) fail("record is not an object");
        auto text_field = [&](const char* key) -> std::string {
            auto it = j.find(key);
            if (it == j.end()) fail(std::string("missing field '") + key + "'");
            if (!it->is_string()) fail(std::string("field '") + key + "' is not a string");
            return it->get<std::string>();
        };
        Message m;
        m.id = text_field("id");
        auto date = Date::parse(text_field("timestamp"));
        if (!date) fail("timestamp is not YYYY-MM-DD");
        m.timestamp = *date;
        auto label = parse_label(text_field("label"));
        if (!label) fail("label must be 'ham' or 'spam'");
        m.label = *label;
        m.subject = text_field("subject");
        m.body = text_field("body");
        if (!ids.insert(m.id).second) fail("duplicate id '" + m.id + "'");
        ds.of(m.label).push_back(std::move(m));
    }
    sort_chronologically(ds.ham);
    sort_chronologically(ds.spam);
    return ds;
}

inline Dataset read_canonical(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset " + path.string());
    return read_canonical(in, path.stem().string());
}

/// Merges two ordered streams so that the second one's share is spread evenly
/// by position: element i of the result comes from `second` exactly when
/// floor((i+1)·b/T) > floor(i·b/T), with b = |second| and T the total. For
/// equal sizes this is strict alternation starting with `first`.
inline std::vector<Message> interleave(const std::vector<Message>& first, const std::vector<Message>& second) {
    const std::size_t total = first.size() + second.size();
    const std::size_t b = second.size();
    std::vector<Message> out;
    out.reserve(total);
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const bool take_second = ((i + 1) * b) / total > (i * b) / total;
        if (take_second) out.push_back(second[ib++]);
        else out.push_back(first[ia++]);
    }
    return out;
}

/// Ham then spam merge used for every training and test stream.
inline std::vector<Message> interleave_classes(const std::vector<Message>& ham, const std::vector<Message>& spam) {
    return interleave(ham, spam);
}

struct Split {
    std::vector<Message> train;
    std::vector<Message> test;
    double spam_ratio = 0.5;
};

struct SplitParams {
    std::size_t train_per_class = 100;
    std::size_t test_size = 200;
    double spam_ratio = 0.5;
    std::size_t offset = 0;
};

/// Spam messages in a test block of `test_size` at `spam_ratio`.
inline std::size_t spam_count(std::size_t test_size, double spam_ratio) {
    return static_cast<std::size_t>(std::llround(spam_ratio * static_cast<double>(test_size)));
}

/// Throws DataError unless `ds` holds enough messages per class for `p`.
inline void check_split_feasible(const Dataset& ds, const SplitParams& p) {
    if (!(p.spam_ratio > 0.0 && p.spam_ratio < 1.0)) throw ConfigError("spam ratio must lie in (0, 1)");
    const std::size_t n_spam = spam_count(p.test_size, p.spam_ratio);
    const std::size_t n_ham = p.test_size - n_spam;
    for (auto [label, need_test] : {std::pair{Label::ham, n_ham}, std::pair{Label::spam, n_spam}}) {
        const std::size_t need = p.offset + p.train_per_class + need_test;
        const std::size_t have = ds.of(label).size();
        if (have < need) {
            throw DataError("insufficient " + std::string(to_string(label)) + " messages: need " +
                            std::to_string(need) + " (offset " + std::to_string(p.offset) + " + train " +
                            std::to_string(p.train_per_class) + " + test " + std::to_string(need_test) +
                            "), have " + std::to_string(have));
        }
    }
}

/// Training block of `train_per_class` per class starting at `offset`, then a
/// test block of `test_size` that follows it in each class, with
/// round(spam_ratio·test_size) spam. Both blocks are interleaved ham/spam.
inline Split make_split(const Dataset& ds, const SplitParams& p) {
    check_split_feasible(ds, p);
    const std::size_t n_spam = spam_count(p.test_size, p.spam_ratio);
    const std::size_t n_ham = p.test_size - n_spam;
    auto slice = [](const std::vector<Message>& v, std::size_t from, std::size_t count) {
        auto first = v.begin() + static_cast<std::ptrdiff_t>(from);
        return std::vector<Message>(first, first + static_cast<std::ptrdiff_t>(count));
    };
    const std::size_t test_from = p.offset + p.train_per_class;
    Split split;
    split.spam_ratio = p.spam_ratio;
    split.train = interleave_classes(slice(ds.ham, p.offset, p.train_per_class), slice(ds.spam, p.offset, p.train_per_class));
    split.test = interleave_classes(slice(ds.ham, test_from, n_ham), slice(ds.spam, test_from, n_spam));
    return split;
}

/// Indices of a class-balanced evaluation subset of `labels`: the minority
/// class is kept whole and the majority class is sampled down to the same
/// size without replacement. Returned in ascending order.
inline std::vector<std::size_t> balanced_subset(const std::vector<Label>& labels, Rng& rng) {
    std::vector<std::size_t> ham, spam;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == Label::spam ? spam : ham).push_back(i);
    auto& major = ham.size() >= spam.size() ? ham : spam;
    auto& minor = ham.size() >= spam.size() ? spam : ham;
    for (std::size_t i = 0; i < minor.size(); ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(rng, major.size() - i));
        std::swap(major[i], major[j]);
    }
    major.resize(minor.size());
    std::vector<std::size_t> out = minor;
    out.insert(out.end(), major.begin(), major.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace icrm
