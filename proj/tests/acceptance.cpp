// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. argv[1] is the icrm command-line binary.
//
// ICRM_ENRON_DIR, when set, names an Enron-style mailbox (directory with
// ham/ and spam/) or a canonical JSONL file used for criterion 5.

#include "icrm/icrm.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using icrm::Label;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string num(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: exact arithmetic.

Outcome criterion1() {
    Outcome o;
    o.require(std::abs(icrm::score_feature(6, 12) - 0.4472) <= 1e-4, "score(6,12) = " + num(icrm::score_feature(6, 12), 6));
    o.require(icrm::score_feature(5, 5) == 0.0, "score(5,5) != 0");
    o.require(icrm::score_feature(6, 0) == -1.0, "score(6,0) != -1");

    // Brute force: expand the matrix into message outcomes and count each
    // formula's numerator and denominator one message at a time.
    icrm::Rng rng(2024);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t tp = icrm::uniform_index(rng, 120), tn = icrm::uniform_index(rng, 120),
                            fp = icrm::uniform_index(rng, 120), fn = icrm::uniform_index(rng, 120);
        std::vector<std::pair<Label, Label>> outcomes;
        for (std::uint64_t i = 0; i < tp; ++i) outcomes.emplace_back(Label::spam, Label::spam);
        for (std::uint64_t i = 0; i < tn; ++i) outcomes.emplace_back(Label::ham, Label::ham);
        for (std::uint64_t i = 0; i < fp; ++i) outcomes.emplace_back(Label::ham, Label::spam);
        for (std::uint64_t i = 0; i < fn; ++i) outcomes.emplace_back(Label::spam, Label::ham);
        std::uint64_t predicted_spam = 0, actual_spam = 0, actual_ham = 0, hit_spam = 0, correct = 0, false_pos = 0, false_neg = 0;
        for (const auto& [actual, predicted] : outcomes) {
            predicted_spam += predicted == Label::spam;
            actual_spam += actual == Label::spam;
            actual_ham += actual == Label::ham;
            hit_spam += actual == Label::spam && predicted == Label::spam;
            correct += actual == predicted;
            false_pos += actual == Label::ham && predicted == Label::spam;
            false_neg += actual == Label::spam && predicted == Label::ham;
        }
        auto q = [](std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : double(a) / double(b); };
        // F = 2PR/(P+R) = 2·hit / (predicted_spam + actual_spam) as exact rationals.
        const double f = hit_spam == 0 ? 0.0 : q(2 * hit_spam, predicted_spam + actual_spam);
        const auto m = icrm::metrics_from_counts({tp, tn, fp, fn});
        const bool same = m.precision == q(hit_spam, predicted_spam) && m.recall == q(hit_spam, actual_spam) &&
                          m.accuracy == q(correct, outcomes.size()) && m.f_score == f &&
                          m.pct_fp == q(false_pos, actual_ham) && m.pct_fn == q(false_neg, actual_spam);
        mismatches += !same;
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " of 1000 confusion matrices differ");
    if (o.pass) o.note("score hand values exact; 1000/1000 matrices identical");
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 2: oracle equivalence.

double toy_posterior(const std::vector<std::pair<std::vector<std::string>, Label>>& docs, const std::vector<std::string>& query) {
    std::set<std::string> vocab;
    std::map<std::string, double> cnt[2];
    double total[2]{}, ndocs[2]{};
    for (const auto& [features, label] : docs) {
        const int c = label == Label::spam;
        ndocs[c] += 1;
        for (const auto& f : features) {
            vocab.insert(f);
            cnt[c][f] += 1;
            total[c] += 1;
        }
    }
    double joint[2];
    for (int c = 0; c < 2; ++c) {
        joint[c] = ndocs[c] / (ndocs[0] + ndocs[1]);
        for (const auto& f : query) joint[c] *= (1.0 + (cnt[c].contains(f) ? cnt[c][f] : 0.0)) / (double(vocab.size()) + total[c]);
    }
    return joint[1] / (joint[0] + joint[1]);
}

Outcome criterion2() {
    Outcome o;
    icrm::Rng rng(77);
    const std::vector<std::string> alphabet{"f1", "f2", "f3", "f4", "f5"};
    double worst_nb = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<std::pair<std::vector<std::string>, Label>> docs;
        const auto ndocs = 2 + icrm::uniform_index(rng, 8);
        icrm::NbModel model;
        for (std::uint64_t d = 0; d < ndocs; ++d) {
            const Label label = d == 0 ? Label::ham : d == 1 ? Label::spam : (icrm::uniform_index(rng, 2) ? Label::spam : Label::ham);
            std::vector<std::string> features;
            for (const auto& f : alphabet)
                if (icrm::uniform_index(rng, 2)) features.push_back(f);
            model.add(icrm::FeatureSample{features}, label);
            docs.emplace_back(std::move(features), label);
        }
        std::vector<std::string> query;
        for (const auto& f : alphabet)
            if (icrm::uniform_index(rng, 2)) query.push_back(f);
        const double err = std::abs(icrm::nb_posterior(model, icrm::FeatureSample{query}) - toy_posterior(docs, query));
        worst_nb = std::isnan(err) && model.vocabulary_size() > 0 ? 1.0 : std::max(worst_nb, err);
    }
    o.require(worst_nb <= 1e-12, "NB max error " + std::to_string(worst_nb));

    double worst_fit = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + icrm::uniform_index(rng, 299);
        std::vector<double> y(n);
        for (auto& v : y) v = icrm::uniform01(rng) * 2 - 1 + 0.001 * trial;
        long double sx = 0, sy = 0, sxx = 0, sxy = 0, N = n;
        for (std::size_t i = 0; i < n; ++i) {
            sx += i;
            sy += y[i];
            sxx += (long double)i * i;
            sxy += i * (long double)y[i];
        }
        const long double slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
        const long double intercept = (sy - slope * sx) / N;
        long double ss_res = 0, ss_tot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ss_res += std::pow(y[i] - (intercept + slope * i), 2);
            ss_tot += std::pow(y[i] - sy / N, 2);
        }
        const auto fit = icrm::linear_fit(y);
        worst_fit = std::max({worst_fit, std::abs(fit.slope - double(slope)), std::abs(fit.intercept - double(intercept)),
                              std::abs(fit.r_squared - double(1 - ss_res / ss_tot))});
    }
    o.require(worst_fit <= 1e-10, "linear fit max error " + std::to_string(worst_fit));

    // Two-tailed critical values from the Student t table: (t, df, p).
    const double table[][3] = {{2.262, 9, 0.05}, {3.250, 9, 0.01}, {1.833, 9, 0.10},
                               {2.228, 10, 0.05}, {3.169, 10, 0.01}, {2.086, 20, 0.05}};
    double worst_t = 0.0;
    for (const auto& row : table) {
        const auto n = static_cast<std::size_t>(row[1]) + 1;
        std::vector<double> a(n, 0.0), zero(n, 0.0);
        a[0] = 1.0;
        a[1] = -1.0;
        const double shift = row[0] * std::sqrt(2.0 / (n - 1)) / std::sqrt(double(n));
        for (auto& v : a) v += shift;
        const auto r = icrm::paired_t_test(a, zero);
        worst_t = std::max(worst_t, std::abs(r.p - row[2]));
    }
    o.require(worst_t <= 1e-3, "t-table max p error " + std::to_string(worst_t));
    if (o.pass)
        o.note("NB err " + std::to_string(worst_nb) + ", fit err " + std::to_string(worst_fit) + ", t-table p err " + num(worst_t, 5));
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 3: dynamics invariants.

Outcome criterion3() {
    Outcome o;
    icrm::Rng rng(31337);
    std::size_t negative = 0, over_growth = 0, non_monotone = 0;
    for (int call = 0; call < 10000; ++call) {
        icrm::IcrmConfig cfg;
        cfg.n_a = 1 + icrm::uniform_index(rng, 12);
        cfg.proliferation = 0.05 + 3 * icrm::uniform01(rng);
        cfg.death_rate = call % 2 ? 0.0 : 0.5 * icrm::uniform01(rng);
        icrm::Repertoire rep;
        icrm::FeatureSample sample;
        const auto k = 1 + icrm::uniform_index(rng, 30);
        for (std::uint64_t i = 0; i < k; ++i) {
            sample.features.push_back("f" + std::to_string(i));
            const auto kind = icrm::uniform_index(rng, 5);
            rep.set(sample.features.back(), kind == 0 ? icrm::Population{} : icrm::Population{20 * icrm::uniform01(rng), 20 * icrm::uniform01(rng)});
        }
        const auto before = rep;
        const auto array = icrm::build_slot_array(sample, rep, cfg, rng);
        icrm::interact(rep, array, cfg);
        const double pairs = std::ceil(array.slots.size() / 2.0);
        double growth = 0.0;
        for (const auto& [f, pop] : rep.table()) {
            negative += pop.effector < 0 || pop.regulatory < 0;
            const auto& old = before.at(f);
            growth += (pop.effector - old.effector) + (pop.regulatory - old.regulatory);
            if (cfg.death_rate == 0.0) non_monotone += pop.effector < old.effector || pop.regulatory < old.regulatory;
        }
        over_growth += growth > 2 * pairs * cfg.proliferation * (1 + 1e-12);
    }
    o.require(negative == 0, std::to_string(negative) + " negative populations");
    o.require(over_growth == 0, std::to_string(over_growth) + " calls exceeded 2*pairs*p");
    o.require(non_monotone == 0, std::to_string(non_monotone) + " decreases at r = 0");

    // An untouched feature under r = 0.02 through a classifier stream.
    icrm::IcrmConfig cfg;
    cfg.death_rate = 0.02;
    icrm::CrossRegulationClassifier clf(cfg);
    clf.repertoire().set("untouched", {6, 12});
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 100;
    const auto ds = icrm::make_synthetic_corpus(spec);
    double worst = 0.0;
    for (std::size_t k = 1; k <= 200; ++k) {
        clf.train(k % 2 ? ds.ham[k / 2] : ds.spam[k / 2 - 1]);
        const auto& p = clf.repertoire().at("untouched");
        const double factor = std::pow(0.98, double(k));
        worst = std::max({worst, std::abs(p.effector - 6 * factor), std::abs(p.regulatory - 12 * factor)});
    }
    o.require(worst <= 1e-9, "decay deviation " + std::to_string(worst));
    if (o.pass) o.note("10000 calls clean; decay deviation " + std::to_string(worst));
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 4: separation on disjoint vocabularies.

struct SeparationResult {
    Outcome outcome;
    double accuracy = 0.0;
};

SeparationResult criterion4() {
    SeparationResult res;
    Outcome& o = res.outcome;
    const auto start = std::chrono::steady_clock::now();
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 200;
    spec.ham_vocabulary = 200;
    spec.spam_vocabulary = 200;
    const auto ds = icrm::make_synthetic_corpus(spec);
    const auto vocab = icrm::synthetic_vocabulary(spec);

    icrm::CrossRegulationClassifier clf;
    const auto split = icrm::make_split(ds, {100, 200, 0.5, 0});
    for (const auto& m : split.train) clf.train(m);
    icrm::ConfusionCounts c;
    for (const auto& m : split.test) c.add(m.label, clf.predict(m));
    res.accuracy = icrm::metrics_from_counts(c).accuracy;

    std::size_t ham_seen = 0, ham_bad = 0, spam_seen = 0, spam_bad = 0;
    for (const auto& w : vocab.ham)
        if (const auto* p = clf.repertoire().find(w)) {
            ++ham_seen;
            ham_bad += !(p->regulatory > p->effector);
        }
    for (const auto& w : vocab.spam)
        if (const auto* p = clf.repertoire().find(w)) {
            ++spam_seen;
            spam_bad += !(p->effector >= p->regulatory);
        }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    o.require(res.accuracy >= 0.95, "accuracy " + num(res.accuracy));
    o.require(ham_bad == 0, std::to_string(ham_bad) + "/" + std::to_string(ham_seen) + " ham-only features end with R <= E");
    o.require(spam_bad == 0, std::to_string(spam_bad) + "/" + std::to_string(spam_seen) + " spam-only features end with R > E");
    o.require(seconds < 10.0, "runtime " + num(seconds, 2) + " s");
    o.note("accuracy " + num(res.accuracy) + ", runtime " + num(seconds, 2) + " s");
    return res;
}

// ---------------------------------------------------------------------------
// Criterion 5: full-size mailbox run, or the synthetic substitute.

Outcome criterion5(const SeparationResult& separation) {
    Outcome o;
    const char* env = std::getenv("ICRM_ENRON_DIR");
    icrm::StaticOptions opt;
    auto icrm_factory = [](std::uint64_t seed) {
        icrm::IcrmConfig cfg;
        cfg.seed = seed;
        return icrm::CrossRegulationClassifier(cfg);
    };
    auto nb_factory = [](std::uint64_t) { return icrm::NaiveBayesClassifier{}; };
    if (env && *env) {
        const fs::path src = env;
        const auto ds = fs::is_directory(src) ? icrm::ingest_enron_dir(src, 1500).dataset : icrm::read_canonical(src);
        const auto ir = icrm::eval_static(ds, icrm_factory, opt);
        const auto nb = icrm::eval_static(ds, nb_factory, opt);
        const double f = ir.summary.f_score.mean, a = ir.summary.accuracy.mean, fn = nb.summary.f_score.mean;
        o.require(f >= 0.80 && f <= 1.0, "ICRM F " + num(f));
        o.require(a >= 0.80 && a <= 1.0, "ICRM accuracy " + num(a));
        o.require(fn >= 0.82 && fn <= 1.0, "NB F " + num(fn));
        o.note(src.filename().string() + ": ICRM F " + num(f) + " acc " + num(a) + ", NB F " + num(fn));
        return o;
    }
    // No mailbox: report the synthetic static run for reference and assert
    // criterion 4 in its place.
    icrm::SyntheticSpec spec;
    const auto ds = icrm::make_synthetic_corpus(spec);
    const auto ir = icrm::eval_static(ds, icrm_factory, opt);
    const auto nb = icrm::eval_static(ds, nb_factory, opt);
    o.note("no mailbox (ICRM_ENRON_DIR unset), synthetic substitute: ICRM F " + num(ir.summary.f_score.mean) + " acc " +
           num(ir.summary.accuracy.mean) + ", NB F " + num(nb.summary.f_score.mean));
    o.require(separation.outcome.pass, "criterion 4 does not hold");
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 6: ratio resilience.

Outcome criterion6() {
    Outcome o;
    icrm::SyntheticSpec spec;
    const auto ds = icrm::make_synthetic_corpus(spec);
    auto accuracy = [&](bool use_icrm, double ratio) {
        icrm::StaticOptions opt;
        opt.spam_ratio = ratio;
        if (use_icrm)
            return icrm::eval_static(ds,
                                     [](std::uint64_t seed) {
                                         icrm::IcrmConfig cfg;
                                         cfg.seed = seed;
                                         return icrm::CrossRegulationClassifier(cfg);
                                     },
                                     opt)
                .summary.accuracy.mean;
        return icrm::eval_static(ds, [](std::uint64_t) { return icrm::NaiveBayesClassifier{}; }, opt).summary.accuracy.mean;
    };
    const double ir50 = accuracy(true, 0.5), nb50 = accuracy(false, 0.5);
    for (double ratio : {0.3, 0.7}) {
        const double ir = accuracy(true, ratio), nb = accuracy(false, ratio);
        const double ir_drop = ir50 - ir, nb_drop = nb50 - nb;
        o.require(ir_drop <= nb_drop + 0.05, "at " + num(ratio, 1) + " ICRM drop " + num(ir_drop) + " > NB drop " + num(nb_drop) + " + 0.05");
        o.note(num(ratio * 100, 0) + "% spam: ICRM " + num(ir) + " (50%: " + num(ir50) + "), NB " + num(nb) + " (50%: " + num(nb50) + ")");
    }
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 7: dynamic protocol mechanics.

struct AllHam {
    void train(const icrm::Message&) {}
    Label predict(const icrm::Message&) { return Label::ham; }
};

// Error rate 0.05 + slope·(window index) realised by per-class error diffusion.
struct Degrading {
    double slope;
    std::size_t shift;
    std::size_t calls = 0;
    double carry[2]{};
    void train(const icrm::Message&) {}
    Label predict(const icrm::Message& m) {
        const double rate = 0.05 + slope * (double(calls++) / double(shift));
        double& acc = carry[m.label == Label::spam];
        acc += rate;
        if (acc < 1.0) return m.label;
        acc -= 1.0;
        return m.label == Label::spam ? Label::ham : Label::spam;
    }
};

Outcome criterion7() {
    Outcome o;
    icrm::SyntheticSpec spec;
    const auto ds = icrm::make_synthetic_corpus(spec);
    const icrm::DynamicOptions opt;
    const auto flat = icrm::eval_dynamic(ds, [](std::uint64_t) { return AllHam{}; }, opt);
    o.require(flat.stream_length == 2800, "stream length " + std::to_string(flat.stream_length));
    o.require(flat.windows.size() == 261, std::to_string(flat.windows.size()) + " windows");
    bool all_fn = true, no_fp = true;
    for (const auto& w : flat.windows) {
        all_fn = all_fn && w.metrics.pct_fn == 1.0;
        no_fp = no_fp && w.metrics.pct_fp == 0.0;
    }
    o.require(all_fn && no_fp, "all-ham stub rates not constant");
    o.require(flat.fn_drift.slope == 0.0 && flat.fn_drift.r_squared == 0.0, "all-ham drift not flat");

    const double slope = 0.0005;
    const auto planted = icrm::eval_dynamic(ds, [&](std::uint64_t) { return Degrading{slope, opt.shift}; }, opt);
    const double fp_err = std::abs(planted.fp_drift.slope - slope) / slope;
    const double fn_err = std::abs(planted.fn_drift.slope - slope) / slope;
    o.require(fp_err <= 0.05, "%FP slope " + num(planted.fp_drift.slope, 6));
    o.require(fn_err <= 0.05, "%FN slope " + num(planted.fn_drift.slope, 6));
    o.note("261 windows; planted slope 0.0005 recovered as " + num(planted.fp_drift.slope, 6) + " (%FP), " +
           num(planted.fn_drift.slope, 6) + " (%FN)");
    return o;
}

// ---------------------------------------------------------------------------
// Criterion 8: determinism.

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int shell(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return rc;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome criterion8(const std::string& cli) {
    Outcome o;
    const fs::path work = fs::temp_directory_path() / ("icrm_acceptance_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(work);
    const fs::path data = work / "synthetic.jsonl";

    if (cli.empty()) {
        o.require(false, "no CLI binary given");
    } else if (shell(quote(cli) + " synth " + quote(data) + " --cross-fraction 0.1 > /dev/null") != 0) {
        o.require(false, "synth command failed");
    } else {
        std::size_t compared = 0, differing = 0;
        for (const char* mode : {"static", "dynamic"}) {
            std::vector<fs::path> dirs;
            for (int rep = 0; rep < 2; ++rep) {
                const fs::path out = work / (std::string(mode) + std::to_string(rep));
                const std::string cmd = quote(cli) + " --seed 42 --jobs " + (rep ? "4" : "1") + " --out " + quote(out) + " eval " + mode +
                                        " both --data " + quote(data) + " > /dev/null 2>&1";
                if (shell(cmd) != 0) o.require(false, std::string("eval ") + mode + " failed");
                dirs.push_back(out);
            }
            for (const auto& entry : fs::directory_iterator(dirs[0])) {
                if (entry.path().extension() != ".csv") continue;
                ++compared;
                if (slurp(entry.path()) != slurp(dirs[1] / entry.path().filename())) {
                    ++differing;
                    o.require(false, entry.path().filename().string() + " differs");
                }
            }
        }
        o.require(compared >= 7, "only " + std::to_string(compared) + " CSV files produced");
        if (differing == 0) o.note(std::to_string(compared) + " CSV files byte-identical across two runs");
    }

    // Snapshot mid-training, restore, continue; compare against one pass.
    icrm::SyntheticSpec spec;
    spec.messages_per_class = 300;
    spec.cross_fraction = 0.15;
    const auto ds = icrm::make_synthetic_corpus(spec);
    const auto split = icrm::make_split(ds, {100, 200, 0.5, 0});
    icrm::IcrmConfig cfg;
    cfg.death_rate = 0.02;
    icrm::CrossRegulationClassifier whole(cfg), part(cfg);
    const std::size_t half = split.train.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        whole.train(split.train[i]);
        part.train(split.train[i]);
    }
    const fs::path state = work / "mid.state";
    icrm::save_snapshot(state, part);
    auto resumed = icrm::load_snapshot(state);
    for (std::size_t i = half; i < split.train.size(); ++i) {
        whole.train(split.train[i]);
        resumed.train(split.train[i]);
    }
    std::size_t verdict_mismatch = 0;
    for (const auto& m : split.test) {
        const auto a = whole.classify(m), b = resumed.classify(m);
        bool same = a.score == b.score && a.label == b.label && a.per_feature.size() == b.per_feature.size();
        for (std::size_t i = 0; same && i < a.per_feature.size(); ++i)
            same = a.per_feature[i].feature == b.per_feature[i].feature && a.per_feature[i].score == b.per_feature[i].score &&
                   a.per_feature[i].population == b.per_feature[i].population;
        verdict_mismatch += !same;
    }
    o.require(verdict_mismatch == 0, std::to_string(verdict_mismatch) + " verdicts differ after restore");
    if (verdict_mismatch == 0) o.note("200 verdicts identical after mid-training restore");

    std::error_code ec;
    fs::remove_all(work, ec);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    bool all = true;
    auto report = [&](int id, const Outcome& o) {
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
    };
    auto guarded = [&](int id, auto fn) {
        try {
            report(id, fn());
        } catch (const std::exception& e) {
            report(id, Outcome{false, std::string("exception: ") + e.what()});
        }
    };
    guarded(1, criterion1);
    guarded(2, criterion2);
    guarded(3, criterion3);
    SeparationResult separation;
    try {
        separation = criterion4();
    } catch (const std::exception& e) {
        separation.outcome = {false, std::string("exception: ") + e.what()};
    }
    report(4, separation.outcome);
    guarded(5, [&] { return criterion5(separation); });
    guarded(6, criterion6);
    guarded(7, criterion7);
    guarded(8, [&] { return criterion8(cli); });
    return all ? 0 : 1;
}
