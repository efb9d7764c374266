#pragma once

// CSV and plain-text renderings of evaluation reports. Every number is
// printed with a fixed format so identical reports give identical bytes.

#include "icrm/error.hpp"
#include "icrm/eval.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace icrm {

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline void write_static_csv(std::ostream& out, const StaticReport& r) {
    out << "run,f_score,accuracy,precision,recall,pct_fp,pct_fn\n";
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
        const auto& m = r.runs[k];
        out << k << ',' << fixed(m.f_score) << ',' << fixed(m.accuracy) << ',' << fixed(m.precision) << ','
            << fixed(m.recall) << ',' << fixed(m.pct_fp) << ',' << fixed(m.pct_fn) << '\n';
    }
}

inline void write_dynamic_csv(std::ostream& out, const DynamicReport& r) {
    out << "window_start,f_score,accuracy,pct_fp,pct_fn\n";
    for (const auto& w : r.windows) {
        out << w.start << ',' << fixed(w.metrics.f_score) << ',' << fixed(w.metrics.accuracy) << ','
            << fixed(w.metrics.pct_fp) << ',' << fixed(w.metrics.pct_fn) << '\n';
    }
}

/// One row of a summary CSV: `model,metric,mean,sd`.
struct SummaryRow {
    std::string model;
    std::string metric;
    double mean = 0.0;
    double sd = 0.0;
};

inline std::vector<SummaryRow> summary_rows(const std::string& model, const MetricSummary& s) {
    return {{model, "f_score", s.f_score.mean, s.f_score.sd},
            {model, "accuracy", s.accuracy.mean, s.accuracy.sd},
            {model, "precision", s.precision.mean, s.precision.sd},
            {model, "recall", s.recall.mean, s.recall.sd},
            {model, "pct_fp", s.pct_fp.mean, s.pct_fp.sd},
            {model, "pct_fn", s.pct_fn.mean, s.pct_fn.sd}};
}

/// Drift lines are stored in the same layout: mean holds the slope and sd
/// holds R².
inline std::vector<SummaryRow> drift_rows(const std::string& model, const DynamicReport& r) {
    return {{model, "slope_pct_fp", r.fp_drift.slope, r.fp_drift.r_squared},
            {model, "slope_pct_fn", r.fn_drift.slope, r.fn_drift.r_squared}};
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "model,metric,mean,sd\n";
    for (const auto& row : rows) out << row.model << ',' << row.metric << ',' << fixed(row.mean) << ',' << fixed(row.sd) << '\n';
}

inline std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::vector<SummaryRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "model,metric,mean,sd") throw DataError("summary CSV header must be model,metric,mean,sd");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (cells.size() != 4) throw DataError("summary CSV line " + std::to_string(line_no) + ": expected 4 fields");
        try {
            rows.push_back({cells[0], cells[1], std::stod(cells[2]), std::stod(cells[3])});
        } catch (const std::exception&) {
            throw DataError("summary CSV line " + std::to_string(line_no) + ": bad number");
        }
    }
    return rows;
}

inline void write_ttest_csv(std::ostream& out, const std::string& a, const std::string& b, const Comparison& c) {
    out << "comparison,metric,t,df,p\n";
    for (const auto& [metric, res] : {std::pair{"f_score", c.f_score}, std::pair{"accuracy", c.accuracy}}) {
        out << a << "_vs_" << b << ',' << metric << ',' << fixed(res.t) << ',' << res.df << ',' << fixed(res.p, 3) << '\n';
    }
}

/// Text table with one column per model and F-score / Accuracy rows of
/// `mean ± sd`, plus %FP / %FN rows, and drift rows when present.
inline void write_table(std::ostream& out, const std::string& title, const std::vector<SummaryRow>& rows) {
    std::vector<std::string> models;
    std::map<std::pair<std::string, std::string>, SummaryRow> cell;
    for (const auto& r : rows) {
        if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
        cell[{r.model, r.metric}] = r;
    }
    struct Line {
        const char* metric;
        const char* label;
        bool drift;
    };
    const Line lines[] = {{"f_score", "F-score", false},           {"accuracy", "Accuracy", false},
                          {"pct_fp", "%FP", false},                {"pct_fn", "%FN", false},
                          {"slope_pct_fp", "slope %FP, R^2", true}, {"slope_pct_fn", "slope %FN, R^2", true}};
    constexpr int label_width = 16;
    constexpr int col_width = 18;
    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    out << title << '\n';
    out << pad("", label_width);
    for (const auto& m : models) out << pad(m, col_width);
    out << '\n';
    for (const auto& line : lines) {
        bool any = false;
        for (const auto& m : models) any = any || cell.contains({m, line.metric});
        if (!any) continue;
        out << pad(line.label, label_width);
        for (const auto& m : models) {
            auto it = cell.find({m, line.metric});
            std::string text = "-";
            if (it != cell.end()) {
                text = line.drift ? fixed(it->second.mean, 5) + ", " + fixed(it->second.sd, 2)
                                  : fixed(it->second.mean, 2) + " +/- " + fixed(it->second.sd, 2);
            }
            out << pad(text, col_width);
        }
        out << '\n';
    }
}

inline void write_ttest_block(std::ostream& out, const std::string& a, const std::string& b, const Comparison& c) {
    out << "paired t-test " << a << " vs " << b << " (df " << c.f_score.df << ")\n";
    out << "  F-score   t = " << fixed(c.f_score.t, 3) << "  p = " << fixed(c.f_score.p, 3) << '\n';
    out << "  Accuracy  t = " << fixed(c.accuracy.t, 3) << "  p = " << fixed(c.accuracy.p, 3) << '\n';
}

}  // namespace icrm
