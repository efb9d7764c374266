#pragma once

// Persisted classifier state.
//
// Both formats are line-oriented text. The first line is `<magic> <version>`;
// every following line is `<key> <values...>`. Reals are written as hex
// floats so a save/load cycle is bit-exact. Feature strings never contain
// whitespace (they come from whitespace tokenization).
//
//   icrm-snapshot 1                     nb-model 1
//   n 50                                n 50
//   n_a 10                              sampling first_last
//   init_ham <E> <R>                    docs <ham> <spam>
//   init_spam <E> <R>                   stopwords <k>
//   init_test <E> <R>                   <word>            (k lines)
//   proliferation <p>                   features <m>
//   death_rate <r>                      <feature> <ham> <spam>  (m lines)
//   sampling first_last|uniform         end
//   seed <u64>
//   rng <mt19937_64 state>
//   stopwords <k>
//   <word>                              (k lines)
//   features <m>
//   <feature> <E> <R>                   (m lines)
//   end

#include "icrm/classifier.hpp"
#include "icrm/error.hpp"
#include "icrm/nbayes.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace icrm {

inline constexpr std::string_view icrm_snapshot_magic = "icrm-snapshot";
inline constexpr std::string_view nb_model_magic = "nb-model";
inline constexpr int snapshot_version = 1;

enum class StateKind { icrm, nb };

namespace detail {

inline std::string hex(double v) {
    std::ostringstream os;
    os << std::hexfloat << v;
    return os.str();
}

inline std::string_view to_string(SamplingMode mode) {
    return mode == SamplingMode::uniform ? "uniform" : "first_last";
}

class StateReader {
public:
    explicit StateReader(std::istream& in) : in_(in) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw SnapshotError("state line " + std::to_string(line_no_) + ": " + what);
    }

    std::vector<std::string> next() {
        std::string line;
        if (!std::getline(in_, line)) {
            ++line_no_;
            fail("unexpected end of file");
        }
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::vector<std::string> fields;
        for (std::string f; ss >> f;) fields.push_back(std::move(f));
        if (fields.empty()) fail("blank line");
        return fields;
    }

    /// Reads `key v1 ... v_count` and returns the values.
    std::vector<std::string> expect(std::string_view key, std::size_t count) {
        auto fields = next();
        if (fields[0] != key) fail("expected '" + std::string(key) + "', found '" + fields[0] + "'");
        if (fields.size() != count + 1) fail("'" + std::string(key) + "' takes " + std::to_string(count) + " value(s)");
        return {fields.begin() + 1, fields.end()};
    }

    double real(const std::string& text) const {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size()) fail("bad number '" + text + "'");
        return v;
    }

    std::uint64_t count(const std::string& text) const {
        if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) fail("bad count '" + text + "'");
        return std::stoull(text);
    }

    void header(std::string_view magic) {
        std::string line;
        ++line_no_;
        if (!std::getline(in_, line)) fail("empty state file");
        std::istringstream ss(line);
        std::string got;
        int version = -1;
        ss >> got >> version;
        if (got != magic) fail("not a " + std::string(magic) + " file (magic '" + got + "')");
        if (version != snapshot_version)
            fail("unsupported version " + std::to_string(version) + ", expected " + std::to_string(snapshot_version));
    }

    std::string rest_of_line(std::string_view key) {
        std::string line;
        ++line_no_;
        if (!std::getline(in_, line)) fail("unexpected end of file");
        if (!line.starts_with(std::string(key) + " ")) fail("expected '" + std::string(key) + "'");
        return line.substr(key.size() + 1);
    }

    SamplingMode sampling() {
        auto v = expect("sampling", 1)[0];
        if (v == "first_last") return SamplingMode::first_last;
        if (v == "uniform") return SamplingMode::uniform;
        fail("unknown sampling mode '" + v + "'");
    }

    std::shared_ptr<const StopwordList> stopwords() {
        const auto k = count(expect("stopwords", 1)[0]);
        std::vector<std::string> words;
        words.reserve(k);
        for (std::uint64_t i = 0; i < k; ++i) {
            auto fields = next();
            if (fields.size() != 1) fail("stopword entry must be a single word");
            words.push_back(std::move(fields[0]));
        }
        return std::make_shared<const StopwordList>(words);
    }

    void end() {
        auto fields = next();
        if (fields.size() != 1 || fields[0] != "end") fail("missing 'end' marker");
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

inline void write_stopwords(std::ostream& out, const StopwordList& list) {
    const auto words = list.sorted_words();
    out << "stopwords " << words.size() << '\n';
    for (const auto& w : words) out << w << '\n';
}

}  // namespace detail

inline void save_snapshot(std::ostream& out, const CrossRegulationClassifier& clf) {
    const auto& cfg = clf.config();
    using detail::hex;
    out << icrm_snapshot_magic << ' ' << snapshot_version << '\n';
    out << "n " << cfg.n << '\n';
    out << "n_a " << cfg.n_a << '\n';
    out << "init_ham " << hex(cfg.init_ham.effector) << ' ' << hex(cfg.init_ham.regulatory) << '\n';
    out << "init_spam " << hex(cfg.init_spam.effector) << ' ' << hex(cfg.init_spam.regulatory) << '\n';
    out << "init_test " << hex(cfg.init_test.effector) << ' ' << hex(cfg.init_test.regulatory) << '\n';
    out << "proliferation " << hex(cfg.proliferation) << '\n';
    out << "death_rate " << hex(cfg.death_rate) << '\n';
    out << "sampling " << detail::to_string(cfg.sampling) << '\n';
    out << "seed " << cfg.seed << '\n';
    out << "rng " << clf.rng() << '\n';
    detail::write_stopwords(out, clf.preprocessor().stopwords());
    const auto entries = clf.repertoire().sorted();
    out << "features " << entries.size() << '\n';
    for (const auto& [f, pop] : entries) out << f << ' ' << hex(pop.effector) << ' ' << hex(pop.regulatory) << '\n';
    out << "end\n";
}

inline CrossRegulationClassifier load_snapshot(std::istream& in) {
    detail::StateReader r(in);
    r.header(icrm_snapshot_magic);
    IcrmConfig cfg;
    cfg.n = r.count(r.expect("n", 1)[0]);
    cfg.n_a = r.count(r.expect("n_a", 1)[0]);
    auto pop = [&](std::string_view key) {
        auto v = r.expect(key, 2);
        return Population{r.real(v[0]), r.real(v[1])};
    };
    cfg.init_ham = pop("init_ham");
    cfg.init_spam = pop("init_spam");
    cfg.init_test = pop("init_test");
    cfg.proliferation = r.real(r.expect("proliferation", 1)[0]);
    cfg.death_rate = r.real(r.expect("death_rate", 1)[0]);
    cfg.sampling = r.sampling();
    cfg.seed = r.count(r.expect("seed", 1)[0]);
    Rng rng;
    {
        std::istringstream state(r.rest_of_line("rng"));
        state >> rng;
        if (!state) r.fail("corrupt RNG state");
    }
    auto stopwords = r.stopwords();
    const auto m = r.count(r.expect("features", 1)[0]);
    Repertoire rep;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto fields = r.next();
        if (fields.size() != 3) r.fail("feature entry needs feature, E and R");
        const Population p{r.real(fields[1]), r.real(fields[2])};
        if (!(p.effector >= 0.0) || !(p.regulatory >= 0.0)) r.fail("negative population for '" + fields[0] + "'");
        rep.set(fields[0], p);
    }
    r.end();
    try {
        return CrossRegulationClassifier(cfg, std::move(stopwords), std::move(rep), rng);
    } catch (const ConfigError& e) {
        r.fail(std::string("invalid configuration: ") + e.what());
    }
}

inline void save_nb_model(std::ostream& out, const NaiveBayesClassifier& clf) {
    const auto& model = clf.model();
    out << nb_model_magic << ' ' << snapshot_version << '\n';
    out << "n " << clf.preprocessor().cap() << '\n';
    out << "sampling " << detail::to_string(clf.preprocessor().mode()) << '\n';
    out << "docs " << model.doc_count(Label::ham) << ' ' << model.doc_count(Label::spam) << '\n';
    detail::write_stopwords(out, clf.preprocessor().stopwords());
    const auto counts = model.sorted_counts();
    out << "features " << counts.size() << '\n';
    for (const auto& [f, c] : counts) out << f << ' ' << c[0] << ' ' << c[1] << '\n';
    out << "end\n";
}

inline NaiveBayesClassifier load_nb_model(std::istream& in) {
    detail::StateReader r(in);
    r.header(nb_model_magic);
    const auto n = r.count(r.expect("n", 1)[0]);
    const auto mode = r.sampling();
    auto docs = r.expect("docs", 2);
    const NbModel::Counts doc_counts{r.count(docs[0]), r.count(docs[1])};
    auto stopwords = r.stopwords();
    const auto m = r.count(r.expect("features", 1)[0]);
    std::map<std::string, NbModel::Counts> features;
    for (std::uint64_t i = 0; i < m; ++i) {
        auto fields = r.next();
        if (fields.size() != 3) r.fail("feature entry needs feature and two counts");
        NbModel::Counts c{r.count(fields[1]), r.count(fields[2])};
        if (c[0] > doc_counts[0] || c[1] > doc_counts[1]) r.fail("feature count exceeds document count");
        features.emplace(fields[0], c);
    }
    r.end();
    try {
        return NaiveBayesClassifier(Preprocessor(n, mode, std::move(stopwords)), NbModel::from_counts(doc_counts, features));
    } catch (const ConfigError& e) {
        r.fail(std::string("invalid configuration: ") + e.what());
    }
}

/// Reads only the magic of a state file.
inline StateKind peek_state_kind(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SnapshotError("cannot open state file " + path.string());
    std::string magic;
    in >> magic;
    if (magic == icrm_snapshot_magic) return StateKind::icrm;
    if (magic == nb_model_magic) return StateKind::nb;
    throw SnapshotError(path.string() + " is not a classifier state file");
}

template <typename Save, typename State>
void save_to(const std::filesystem::path& path, Save save, const State& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SnapshotError("cannot write " + path.string());
    save(out, state);
    if (!out) throw SnapshotError("write failed for " + path.string());
}

inline void save_snapshot(const std::filesystem::path& path, const CrossRegulationClassifier& clf) {
    save_to(path, [](std::ostream& o, const CrossRegulationClassifier& c) { save_snapshot(o, c); }, clf);
}

inline void save_nb_model(const std::filesystem::path& path, const NaiveBayesClassifier& clf) {
    save_to(path, [](std::ostream& o, const NaiveBayesClassifier& c) { save_nb_model(o, c); }, clf);
}

inline CrossRegulationClassifier load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open state file " + path.string());
    return load_snapshot(in);
}

inline NaiveBayesClassifier load_nb_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot open state file " + path.string());
    return load_nb_model(in);
}

}  // namespace icrm
