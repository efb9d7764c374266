#pragma once

// Porter's 1980 suffix-stripping stemmer (steps 1a through 5b), rule set as
// originally published: step 2 maps "abli" to "able" and has no "logi" rule.

#include <string>
#include <string_view>

namespace icrm {

namespace detail {

class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view word) : b_(word) {}

    std::string run() && {
        if (b_.size() <= 2) return std::move(b_);
        step1ab();
        if (b_.size() > 1) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return std::move(b_);
    }

private:
    std::string b_;
    // Length of the stem left by the most recent successful ends() call.
    std::size_t j_ = 0;

    bool consonant(std::size_t i) const {
        switch (b_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 || !consonant(i - 1);
        default:
            return true;
        }
    }

    // Number of VC sequences in b_[0, len).
    int measure(std::size_t len) const {
        int m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) ++i;
        while (i < len) {
            while (i < len && !consonant(i)) ++i;
            if (i >= len) break;
            while (i < len && consonant(i)) ++i;
            ++m;
        }
        return m;
    }

    int stem_measure() const { return measure(j_); }

    bool vowel_in(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    // b_[0, len) ends with a double consonant.
    bool double_consonant(std::size_t len) const {
        if (len < 2) return false;
        return b_[len - 1] == b_[len - 2] && consonant(len - 1);
    }

    // b_[0, len) ends consonant-vowel-consonant, the last not w, x or y.
    bool cvc(std::size_t len) const {
        if (len < 3) return false;
        if (!consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
        const char ch = b_[len - 1];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view suffix) {
        if (suffix.size() > b_.size()) return false;
        if (b_.compare(b_.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
        j_ = b_.size() - suffix.size();
        return true;
    }

    void set_to(std::string_view replacement) {
        b_.resize(j_);
        b_.append(replacement);
    }

    void replace_if_measured(std::string_view replacement) {
        if (stem_measure() > 0) set_to(replacement);
    }

    void step1ab() {
        if (b_.back() == 's') {
            if (ends("sses")) {
                b_.resize(b_.size() - 2);
            } else if (ends("ies")) {
                set_to("i");
            } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
                b_.pop_back();
            }
        }
        if (ends("eed")) {
            if (stem_measure() > 0) b_.pop_back();
        } else if ((ends("ed") || ends("ing")) && vowel_in(j_)) {
            b_.resize(j_);
            if (ends("at")) {
                set_to("ate");
            } else if (ends("bl")) {
                set_to("ble");
            } else if (ends("iz")) {
                set_to("ize");
            } else if (double_consonant(b_.size())) {
                const char ch = b_.back();
                if (ch != 'l' && ch != 's' && ch != 'z') b_.pop_back();
            } else if (measure(b_.size()) == 1 && cvc(b_.size())) {
                b_.push_back('e');
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in(j_)) b_.back() = 'i';
    }

    void step2() {
        if (b_.size() < 2) return;
        switch (b_[b_.size() - 2]) {
        case 'a':
            if (ends("ational")) { replace_if_measured("ate"); break; }
            if (ends("tional")) { replace_if_measured("tion"); break; }
            break;
        case 'c':
            if (ends("enci")) { replace_if_measured("ence"); break; }
            if (ends("anci")) { replace_if_measured("ance"); break; }
            break;
        case 'e':
            if (ends("izer")) { replace_if_measured("ize"); break; }
            break;
        case 'l':
            if (ends("abli")) { replace_if_measured("able"); break; }
            if (ends("alli")) { replace_if_measured("al"); break; }
            if (ends("entli")) { replace_if_measured("ent"); break; }
            if (ends("eli")) { replace_if_measured("e"); break; }
            if (ends("ousli")) { replace_if_measured("ous"); break; }
            break;
        case 'o':
            if (ends("ization")) { replace_if_measured("ize"); break; }
            if (ends("ation")) { replace_if_measured("ate"); break; }
            if (ends("ator")) { replace_if_measured("ate"); break; }
            break;
        case 's':
            if (ends("alism")) { replace_if_measured("al"); break; }
            if (ends("iveness")) { replace_if_measured("ive"); break; }
            if (ends("fulness")) { replace_if_measured("ful"); break; }
            if (ends("ousness")) { replace_if_measured("ous"); break; }
            break;
        case 't':
            if (ends("aliti")) { replace_if_measured("al"); break; }
            if (ends("iviti")) { replace_if_measured("ive"); break; }
            if (ends("biliti")) { replace_if_measured("ble"); break; }
            break;
        default:
            break;
        }
    }

    void step3() {
        switch (b_.back()) {
        case 'e':
            if (ends("icate")) { replace_if_measured("ic"); break; }
            if (ends("ative")) { replace_if_measured(""); break; }
            if (ends("alize")) { replace_if_measured("al"); break; }
            break;
        case 'i':
            if (ends("iciti")) { replace_if_measured("ic"); break; }
            break;
        case 'l':
            if (ends("ical")) { replace_if_measured("ic"); break; }
            if (ends("ful")) { replace_if_measured(""); break; }
            break;
        case 's':
            if (ends("ness")) { replace_if_measured(""); break; }
            break;
        default:
            break;
        }
    }

    void step4() {
        if (b_.size() < 2) return;
        bool matched = false;
        switch (b_[b_.size() - 2]) {
        case 'a':
            matched = ends("al");
            break;
        case 'c':
            matched = ends("ance") || ends("ence");
            break;
        case 'e':
            matched = ends("er");
            break;
        case 'i':
            matched = ends("ic");
            break;
        case 'l':
            matched = ends("able") || ends("ible");
            break;
        case 'n':
            matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
            break;
        case 'o':
            if (ends("ion")) {
                matched = j_ > 0 && (b_[j_ - 1] == 's' || b_[j_ - 1] == 't');
            } else {
                matched = ends("ou");
            }
            break;
        case 's':
            matched = ends("ism");
            break;
        case 't':
            matched = ends("ate") || ends("iti");
            break;
        case 'u':
            matched = ends("ous");
            break;
        case 'v':
            matched = ends("ive");
            break;
        case 'z':
            matched = ends("ize");
            break;
        default:
            break;
        }
        if (matched && stem_measure() > 1) b_.resize(j_);
    }

    void step5() {
        if (b_.back() == 'e') {
            const std::size_t stem = b_.size() - 1;
            const int m = measure(stem);
            if (m > 1 || (m == 1 && !cvc(stem))) b_.pop_back();
        }
        if (b_.back() == 'l' && double_consonant(b_.size()) && measure(b_.size()) > 1) b_.pop_back();
    }
};

}  // namespace detail

/// Porter stem of a lowercase word. Words of one or two characters are
/// returned unchanged.
inline std::string stem(std::string_view word) {
    return detail::PorterStemmer(word).run();
}

}  // namespace icrm
