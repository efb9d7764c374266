#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icrm {

/// Ham is the negative class, spam the positive one.
enum class Label { ham, spam };

inline constexpr std::string_view to_string(Label label) {
    return label == Label::spam ? "spam" : "ham";
}

inline std::optional<Label> parse_label(std::string_view text) {
    if (text == "ham") return Label::ham;
    if (text == "spam") return Label::spam;
    return std::nullopt;
}

/// Calendar date at day precision.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

    /// Parses `YYYY-MM-DD`. Rejects out-of-range months and days.
    static std::optional<Date> parse(std::string_view text) {
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
        auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
            int value = 0;
            const char* first = text.data() + pos;
            const char* last = first + len;
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc{} || ptr != last) return std::nullopt;
            return value;
        };
        auto y = field(0, 4);
        auto m = field(5, 2);
        auto d = field(8, 2);
        if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > 31) return std::nullopt;
        return Date{*y, *m, *d};
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        return buf;
    }
};

/// One e-mail record.
struct Message {
    std::string id;
    Date timestamp;
    Label label = Label::ham;
    std::string subject;
    std::string body;

    friend bool operator==(const Message&, const Message&) = default;
};

/// Per-class message lists, each ordered by (timestamp, id).
struct Dataset {
    std::string name;
    std::vector<Message> ham;
    std::vector<Message> spam;

    const std::vector<Message>& of(Label label) const { return label == Label::spam ? spam : ham; }
    std::vector<Message>& of(Label label) { return label == Label::spam ? spam : ham; }

    std::size_t size() const { return ham.size() + spam.size(); }
};

inline bool chronological(const Message& a, const Message& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.id < b.id;
}

inline void sort_chronologically(std::vector<Message>& messages) {
    std::sort(messages.begin(), messages.end(), chronological);
}

}  // namespace icrm
