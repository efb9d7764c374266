#pragma once

// Flat `key = value` configuration files.

#include "icrm/dynamics.hpp"
#include "icrm/error.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace icrm {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Keys are normalised to lowercase with '-' mapped to '_'.
inline std::string normalize_key(std::string key) {
    for (char& c : key) {
        if (c == '-') c = '_';
        else if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return key;
}

/// Parses `key = value` lines in file order. `#` starts a comment; blank
/// lines are skipped. Errors name the offending line.
inline KeyValues parse_key_values(std::istream& in, const std::string& source = "config") {
    KeyValues out;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) return std::string();
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
        out.emplace_back(normalize_key(std::move(key)), std::move(value));
    }
    return out;
}

inline KeyValues load_key_values(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_key_values(in, path.string());
}

namespace detail {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError("invalid value '" + value + "' for " + key);
    return out;
}

}  // namespace detail

inline double parse_real(const std::string& key, const std::string& value) {
    return detail::parse_number<double>(key, value);
}

inline std::uint64_t parse_count(const std::string& key, const std::string& value) {
    return detail::parse_number<std::uint64_t>(key, value);
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("invalid boolean '" + value + "' for " + key);
}

inline SamplingMode parse_sampling(const std::string& value) {
    if (value == "first_last" || value == "first-last") return SamplingMode::first_last;
    if (value == "uniform") return SamplingMode::uniform;
    throw ConfigError("sampling must be first-last or uniform, got '" + value + "'");
}

/// Applies one key to an IcrmConfig. Returns false for keys it does not own.
inline bool apply_icrm_key(IcrmConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n") cfg.n = parse_count(key, value);
    else if (key == "n_a") cfg.n_a = parse_count(key, value);
    else if (key == "e0_ham") cfg.init_ham.effector = parse_real(key, value);
    else if (key == "r0_ham") cfg.init_ham.regulatory = parse_real(key, value);
    else if (key == "e0_spam") cfg.init_spam.effector = parse_real(key, value);
    else if (key == "r0_spam") cfg.init_spam.regulatory = parse_real(key, value);
    else if (key == "e0_test") cfg.init_test.effector = parse_real(key, value);
    else if (key == "r0_test") cfg.init_test.regulatory = parse_real(key, value);
    else if (key == "proliferation") cfg.proliferation = parse_real(key, value);
    else if (key == "death_rate") cfg.death_rate = parse_real(key, value);
    else if (key == "sampling") cfg.sampling = parse_sampling(value);
    else if (key == "seed") cfg.seed = parse_count(key, value);
    else return false;
    return true;
}

}  // namespace icrm
