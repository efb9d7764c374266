// icrm: corpus ingestion, training, classification and evaluation runs.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include "icrm/icrm.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Settings {
    // global
    std::uint64_t seed = 42;
    std::string config_file;
    std::string out_dir = ".";
    std::size_t jobs = 1;

    // classifier
    icrm::IcrmConfig icrm;
    std::string sampling = "first-last";

    // protocols
    std::size_t runs = 10;
    std::size_t train = 100;
    std::size_t test = 200;
    double spam_ratio = 0.5;
    bool shuffle_test = false;
    bool balance = true;
    std::size_t window = 200;
    std::size_t shift = 10;

    // data
    std::string data;
    std::size_t limit = 1500;
    std::string stopwords;

    // synthetic corpus
    icrm::SyntheticSpec synth;
};

using Setter = std::function<void(Settings&, const std::string&)>;

/// Config-file keys. Each mirrors the long option of the same name.
const std::map<std::string, Setter>& config_keys() {
    using icrm::parse_bool;
    using icrm::parse_count;
    using icrm::parse_real;
    static const std::map<std::string, Setter> keys = {
        {"seed", [](Settings& s, const std::string& v) { s.seed = parse_count("seed", v); }},
        {"out", [](Settings& s, const std::string& v) { s.out_dir = v; }},
        {"jobs", [](Settings& s, const std::string& v) { s.jobs = parse_count("jobs", v); }},
        {"n", [](Settings& s, const std::string& v) { s.icrm.n = parse_count("n", v); }},
        {"n_a", [](Settings& s, const std::string& v) { s.icrm.n_a = parse_count("n_a", v); }},
        {"e0_ham", [](Settings& s, const std::string& v) { s.icrm.init_ham.effector = parse_real("e0_ham", v); }},
        {"r0_ham", [](Settings& s, const std::string& v) { s.icrm.init_ham.regulatory = parse_real("r0_ham", v); }},
        {"e0_spam", [](Settings& s, const std::string& v) { s.icrm.init_spam.effector = parse_real("e0_spam", v); }},
        {"r0_spam", [](Settings& s, const std::string& v) { s.icrm.init_spam.regulatory = parse_real("r0_spam", v); }},
        {"e0_test", [](Settings& s, const std::string& v) { s.icrm.init_test.effector = parse_real("e0_test", v); }},
        {"r0_test", [](Settings& s, const std::string& v) { s.icrm.init_test.regulatory = parse_real("r0_test", v); }},
        {"proliferation", [](Settings& s, const std::string& v) { s.icrm.proliferation = parse_real("proliferation", v); }},
        {"death_rate", [](Settings& s, const std::string& v) { s.icrm.death_rate = parse_real("death_rate", v); }},
        {"sampling", [](Settings& s, const std::string& v) { s.sampling = v; }},
        {"runs", [](Settings& s, const std::string& v) { s.runs = parse_count("runs", v); }},
        {"train", [](Settings& s, const std::string& v) { s.train = parse_count("train", v); }},
        {"test", [](Settings& s, const std::string& v) { s.test = parse_count("test", v); }},
        {"spam_ratio", [](Settings& s, const std::string& v) { s.spam_ratio = parse_real("spam_ratio", v); }},
        {"shuffle_test", [](Settings& s, const std::string& v) { s.shuffle_test = parse_bool("shuffle_test", v); }},
        {"balance", [](Settings& s, const std::string& v) { s.balance = parse_bool("balance", v); }},
        {"window", [](Settings& s, const std::string& v) { s.window = parse_count("window", v); }},
        {"shift", [](Settings& s, const std::string& v) { s.shift = parse_count("shift", v); }},
        {"data", [](Settings& s, const std::string& v) { s.data = v; }},
        {"limit", [](Settings& s, const std::string& v) { s.limit = parse_count("limit", v); }},
        {"stopwords", [](Settings& s, const std::string& v) { s.stopwords = v; }},
    };
    return keys;
}

/// The file named by --config supplies defaults; flags given on the command
/// line are parsed afterwards and win.
void apply_config_file(Settings& s, int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.starts_with("--config=")) path = std::string(arg.substr(9));
    }
    if (path.empty()) return;
    for (const auto& [key, value] : icrm::load_key_values(path)) {
        auto it = config_keys().find(key);
        if (it == config_keys().end()) throw icrm::ConfigError(path + ": unknown key '" + key + "'");
        it->second(s, value);
    }
}

void add_classifier_options(CLI::App& cmd, Settings& s) {
    cmd.add_option("--n", s.icrm.n, "features sampled per message (even)")->capture_default_str();
    cmd.add_option("--n-a", s.icrm.n_a, "binding slots per feature")->capture_default_str();
    cmd.add_option("--e0-ham", s.icrm.init_ham.effector)->capture_default_str();
    cmd.add_option("--r0-ham", s.icrm.init_ham.regulatory)->capture_default_str();
    cmd.add_option("--e0-spam", s.icrm.init_spam.effector)->capture_default_str();
    cmd.add_option("--r0-spam", s.icrm.init_spam.regulatory)->capture_default_str();
    cmd.add_option("--e0-test", s.icrm.init_test.effector)->capture_default_str();
    cmd.add_option("--r0-test", s.icrm.init_test.regulatory)->capture_default_str();
    cmd.add_option("--proliferation", s.icrm.proliferation, "population gain per proliferating cell")
        ->capture_default_str();
    cmd.add_option("--death-rate", s.icrm.death_rate, "per-message decay in [0, 1)")->capture_default_str();
    cmd.add_option("--sampling", s.sampling, "first-last or uniform")->capture_default_str();
    cmd.add_option("--stopwords", s.stopwords, "stopword file, one word per line (default: bundled SMART list)");
}

void add_data_option(CLI::App& cmd, Settings& s) {
    cmd.add_option("--data", s.data, "canonical JSONL dataset or Enron-style directory");
}

icrm::Dataset load_dataset(const Settings& s) {
    if (s.data.empty()) throw icrm::ConfigError("--data is required");
    if (fs::is_directory(s.data)) return icrm::ingest_enron_dir(s.data, s.limit).dataset;
    if (!fs::exists(s.data)) throw icrm::DataError("dataset not found: " + s.data);
    return icrm::read_canonical(fs::path(s.data));
}

std::shared_ptr<const icrm::StopwordList> load_stopwords(const Settings& s) {
    if (s.stopwords.empty()) return nullptr;
    return std::make_shared<const icrm::StopwordList>(icrm::StopwordList::load(s.stopwords));
}

/// Resolved classifier configuration; validated before any work starts.
icrm::IcrmConfig classifier_config(const Settings& s) {
    auto cfg = s.icrm;
    cfg.sampling = icrm::parse_sampling(s.sampling);
    cfg.seed = s.seed;
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw icrm::DataError("cannot write " + path.string());
    out << text;
    if (!out) throw icrm::DataError("write failed for " + path.string());
}

template <typename Writer>
std::string render(Writer writer) {
    std::ostringstream out;
    writer(out);
    return out.str();
}

/// Shortest round-trip form, always with a fractional part ("0.0", "1.25").
std::string format_score(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::vector<std::string> models_of(const std::string& model) {
    if (model == "both") return {"icrm", "nb"};
    return {model};
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Settings& s, const std::string& src, const std::string& dst) {
    const auto result = icrm::ingest_enron_dir(src, s.limit);
    icrm::write_canonical(fs::path(dst), result.dataset);
    std::cout << "ham " << result.dataset.ham.size() << "\n"
              << "spam " << result.dataset.spam.size() << "\n"
              << "rejected " << result.rejected.size() << "\n";
    for (const auto& r : result.rejected) std::cerr << "rejected: " << r << '\n';
    return 0;
}

int cmd_synth(const Settings& s, const std::string& dst) {
    icrm::write_canonical(fs::path(dst), icrm::make_synthetic_corpus(s.synth));
    std::cout << "ham " << s.synth.messages_per_class << "\nspam " << s.synth.messages_per_class << "\n";
    return 0;
}

int cmd_eval(const Settings& s, const std::string& mode, const std::string& model) {
    const auto cfg = classifier_config(s);
    const auto stop = load_stopwords(s);
    const icrm::Preprocessor prep(cfg.n, cfg.sampling, stop);
    const auto ds = load_dataset(s);
    fs::create_directories(s.out_dir);
    const fs::path out = s.out_dir;

    auto icrm_factory = [&](std::uint64_t seed) {
        auto c = cfg;
        c.seed = seed;
        return icrm::CrossRegulationClassifier(c, stop);
    };
    auto nb_factory = [&](std::uint64_t) { return icrm::NaiveBayesClassifier(prep); };

    std::vector<icrm::SummaryRow> rows;
    if (mode == "static") {
        icrm::StaticOptions opt;
        opt.runs = s.runs;
        opt.train_per_class = s.train;
        opt.test_size = s.test;
        opt.spam_ratio = s.spam_ratio;
        opt.shuffle_test = s.shuffle_test;
        opt.balance = s.balance;
        opt.seed = s.seed;
        opt.jobs = s.jobs;
        // Validate the split for every run before computing anything.
        icrm::check_split_feasible(ds, {opt.train_per_class, opt.test_size, opt.spam_ratio,
                                        icrm::run_offset(opt.runs - 1, opt.train_per_class)});
        std::map<std::string, icrm::StaticReport> reports;
        for (const auto& m : models_of(model)) {
            reports[m] = m == "icrm" ? icrm::eval_static(ds, icrm_factory, opt) : icrm::eval_static(ds, nb_factory, opt);
            write_file(out / ("static_" + m + ".csv"), render([&](std::ostream& o) { icrm::write_static_csv(o, reports[m]); }));
            auto r = icrm::summary_rows(m, reports[m].summary);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        write_file(out / "static_summary.csv", render([&](std::ostream& o) { icrm::write_summary_csv(o, rows); }));
        std::string table = render([&](std::ostream& o) {
            icrm::write_table(o, "static: " + std::to_string(opt.runs) + " runs, spam ratio " + icrm::fixed(opt.spam_ratio, 2), rows);
        });
        if (model == "both") {
            if (opt.runs < 2) throw icrm::ConfigError("paired t-test needs at least two runs");
            const auto cmp = icrm::compare(reports["icrm"], reports["nb"]);
            write_file(out / "ttest.csv", render([&](std::ostream& o) { icrm::write_ttest_csv(o, "icrm", "nb", cmp); }));
            table += render([&](std::ostream& o) { icrm::write_ttest_block(o, "icrm", "nb", cmp); });
        }
        write_file(out / "static_table.txt", table);
        std::cout << table;
        return 0;
    }

    icrm::DynamicOptions opt;
    opt.train_per_class = s.train;
    opt.window = s.window;
    opt.shift = s.shift;
    opt.seed = s.seed;
    if (opt.shift == 0 || opt.window == 0) throw icrm::ConfigError("window and shift must be positive");
    for (const auto& m : models_of(model)) {
        const auto report = m == "icrm" ? icrm::eval_dynamic(ds, icrm_factory, opt) : icrm::eval_dynamic(ds, nb_factory, opt);
        write_file(out / ("dynamic_" + m + ".csv"), render([&](std::ostream& o) { icrm::write_dynamic_csv(o, report); }));
        auto r = icrm::summary_rows(m, report.summary);
        rows.insert(rows.end(), r.begin(), r.end());
        auto d = icrm::drift_rows(m, report);
        rows.insert(rows.end(), d.begin(), d.end());
        std::cerr << m << ": " << report.windows.size() << " windows over " << report.stream_length << " messages\n";
    }
    write_file(out / "dynamic_summary.csv", render([&](std::ostream& o) { icrm::write_summary_csv(o, rows); }));
    const std::string table = render([&](std::ostream& o) {
        icrm::write_table(o, "dynamic: window " + std::to_string(opt.window) + ", shift " + std::to_string(opt.shift), rows);
    });
    write_file(out / "dynamic_table.txt", table);
    std::cout << table;
    return 0;
}

int cmd_train(const Settings& s, const std::string& model, const std::string& state) {
    const auto cfg = classifier_config(s);
    const auto stop = load_stopwords(s);
    const auto ds = load_dataset(s);
    for (icrm::Label label : {icrm::Label::ham, icrm::Label::spam})
        if (ds.of(label).size() < s.train)
            throw icrm::DataError("insufficient " + std::string(icrm::to_string(label)) + " messages: need " +
                                  std::to_string(s.train) + ", have " + std::to_string(ds.of(label).size()));
    auto head = [&](const std::vector<icrm::Message>& v) {
        return std::vector<icrm::Message>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s.train));
    };
    const auto stream = icrm::interleave_classes(head(ds.ham), head(ds.spam));
    if (model == "icrm") {
        icrm::CrossRegulationClassifier clf(cfg, stop);
        for (const auto& m : stream) clf.train(m);
        icrm::save_snapshot(fs::path(state), clf);
        std::cout << "trained icrm on " << stream.size() << " messages, " << clf.repertoire().size() << " features\n";
    } else {
        icrm::NaiveBayesClassifier clf(icrm::Preprocessor(cfg.n, cfg.sampling, stop));
        for (const auto& m : stream) clf.train(m);
        icrm::save_nb_model(fs::path(state), clf);
        std::cout << "trained nb on " << stream.size() << " messages, " << clf.model().vocabulary_size() << " features\n";
    }
    return 0;
}

icrm::Message read_message(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw icrm::DataError("cannot read message file " + path);
    const std::string raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    auto [subject, body] = icrm::split_subject(icrm::detail::to_utf8(raw));
    icrm::Message m;
    m.id = fs::path(path).filename().string();
    m.subject = std::move(subject);
    m.body = std::move(body);
    return m;
}

int cmd_classify(const std::string& state, const std::string& message, bool explain) {
    const auto kind = icrm::peek_state_kind(state);
    const auto msg = read_message(message);
    if (kind == icrm::StateKind::icrm) {
        auto clf = icrm::load_snapshot(fs::path(state));
        const auto verdict = clf.classify(msg);
        std::cout << icrm::to_string(verdict.label) << ' ' << format_score(verdict.score) << '\n';
        if (explain)
            for (const auto& f : verdict.per_feature)
                std::cout << "  " << f.feature << ' ' << format_score(f.score) << " E=" << format_score(f.population.effector)
                          << " R=" << format_score(f.population.regulatory) << '\n';
        return 0;
    }
    const auto clf = icrm::load_nb_model(fs::path(state));
    const auto sample = clf.preprocessor()(msg);
    const double posterior = icrm::nb_posterior(clf.model(), sample);
    std::cout << icrm::to_string(icrm::nb_decide(posterior)) << ' ' << format_score(posterior) << '\n';
    if (explain)
        for (const auto& f : sample.features) {
            const double llr = clf.model().log_likelihood(icrm::Label::spam, f) - clf.model().log_likelihood(icrm::Label::ham, f);
            std::cout << "  " << f << ' ' << format_score(llr) << '\n';
        }
    return 0;
}

int cmd_report(const std::string& dir) {
    bool any = false;
    for (const char* name : {"static_summary.csv", "dynamic_summary.csv"}) {
        const fs::path p = fs::path(dir) / name;
        if (!fs::exists(p)) continue;
        std::ifstream in(p);
        const auto rows = icrm::read_summary_csv(in);
        icrm::write_table(std::cout, std::string(name).substr(0, std::strlen(name) - 12), rows);
        std::cout << '\n';
        any = true;
    }
    const fs::path ttest = fs::path(dir) / "ttest.csv";
    if (fs::exists(ttest)) {
        std::ifstream in(ttest);
        std::cout << in.rdbuf();
        any = true;
    }
    if (!any) throw icrm::DataError("no summary files in " + dir);
    return 0;
}

int run(int argc, char** argv) {
    Settings s;
    apply_config_file(s, argc, argv);

    CLI::App app{"Cross-regulation spam classifier: ingestion, training, classification and evaluation"};
    app.require_subcommand(1);
    app.add_option("--seed", s.seed, "random seed")->capture_default_str();
    app.add_option("--config", s.config_file, "flat key = value file; command-line flags override it");
    app.add_option("--out", s.out_dir, "output directory")->capture_default_str();
    app.add_option("--jobs", s.jobs, "parallel static runs")->capture_default_str()->check(CLI::PositiveNumber);

    std::string src, dst, mode, model, state, message;
    bool explain = false;

    auto* ingest = app.add_subcommand("ingest", "read an Enron-style ham/ spam/ tree into a canonical JSONL file");
    ingest->add_option("src", src, "directory with ham/ and spam/")->required();
    ingest->add_option("dst", dst, "output JSONL file")->required();
    ingest->add_option("--limit", s.limit, "messages kept per class")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "write a seeded synthetic canonical dataset");
    synth->add_option("dst", dst, "output JSONL file")->required();
    synth->add_option("--messages", s.synth.messages_per_class, "messages per class")->capture_default_str();
    synth->add_option("--ham-vocabulary", s.synth.ham_vocabulary)->capture_default_str();
    synth->add_option("--spam-vocabulary", s.synth.spam_vocabulary)->capture_default_str();
    synth->add_option("--shared-vocabulary", s.synth.shared_vocabulary)->capture_default_str();
    synth->add_option("--shared-fraction", s.synth.shared_fraction)->capture_default_str();
    synth->add_option("--cross-fraction", s.synth.cross_fraction)->capture_default_str();
    synth->add_option("--synth-seed", s.synth.seed, "generator seed")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "run the static or dynamic protocol");
    eval->add_option("mode", mode, "static or dynamic")->required()->check(CLI::IsMember({"static", "dynamic"}));
    eval->add_option("model", model, "icrm, nb or both")->required()->check(CLI::IsMember({"icrm", "nb", "both"}));
    add_data_option(*eval, s);
    add_classifier_options(*eval, s);
    eval->add_option("--runs", s.runs, "static runs")->capture_default_str()->check(CLI::PositiveNumber);
    eval->add_option("--train", s.train, "training messages per class")->capture_default_str();
    eval->add_option("--test", s.test, "static test block size")->capture_default_str();
    eval->add_option("--spam-ratio", s.spam_ratio, "spam share of the static test block")->capture_default_str();
    eval->add_flag("--shuffle-test", s.shuffle_test, "seeded shuffle of each static test block");
    eval->add_flag("--balance,!--no-balance", s.balance, "score unbalanced test blocks on a balanced subset");
    eval->add_option("--window", s.window, "dynamic window size")->capture_default_str();
    eval->add_option("--shift", s.shift, "dynamic window shift")->capture_default_str();
    eval->add_option("--limit", s.limit, "messages per class when --data is a directory")->capture_default_str();

    auto* train = app.add_subcommand("train", "train on the first --train messages per class and save the state");
    train->add_option("model", model, "icrm or nb")->required()->check(CLI::IsMember({"icrm", "nb"}));
    train->add_option("state", state, "state file to write")->required();
    add_data_option(*train, s);
    add_classifier_options(*train, s);
    train->add_option("--train", s.train, "training messages per class")->capture_default_str();
    train->add_option("--limit", s.limit, "messages per class when --data is a directory")->capture_default_str();

    auto* classify = app.add_subcommand("classify", "classify one raw message file with a saved state");
    classify->add_option("state", state, "state file")->required();
    classify->add_option("message", message, "raw message file")->required();
    classify->add_flag("--explain", explain, "print one line per sampled feature");

    auto* report = app.add_subcommand("report", "print the tables of a previous eval output directory");
    report->add_option("dir", src, "eval output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*ingest) return cmd_ingest(s, src, dst);
    if (*synth) return cmd_synth(s, dst);
    if (*eval) return cmd_eval(s, mode, model);
    if (*train) return cmd_train(s, model, state);
    if (*classify) return cmd_classify(state, message, explain);
    return cmd_report(src);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const icrm::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
