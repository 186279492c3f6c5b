/*
 * Copyright 2026 The trollstack Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "trollstack/evaluation.hpp"

namespace trollstack::evaluation {

namespace {

std::string fixed(double value, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

// Left-aligned columns separated by two spaces, with a dashed rule under the header.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) {
        row.resize(header_.size());
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::vector<std::size_t> width(header_.size());
        for (std::size_t c = 0; c < header_.size(); ++c) {
            width[c] = header_[c].size();
            for (const auto& r : rows_) width[c] = std::max(width[c], r[c].size());
        }
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& cells) {
            std::string text;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                text += cells[c];
                if (c + 1 < cells.size()) text += std::string(width[c] - cells[c].size() + 2, ' ');
            }
            while (!text.empty() && text.back() == ' ') text.pop_back();
            out << text << '\n';
        };
        line(header_);
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
        out << std::string(total, '-') << '\n';
        for (const auto& r : rows_) line(r);
        return out.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace

std::string format_duration(double seconds) {
    if (!(seconds >= 0.0)) seconds = 0.0;
    if (seconds < 60.0) return fixed(seconds) + "s";
    const auto whole = static_cast<long long>(std::llround(seconds));
    return std::to_string(whole / 60) + "min " + std::to_string(whole % 60) + "s";
}

std::string render_class_table(const EvaluationReport& report, const std::string& model_label) {
    TextTable t({"Model", "Tweets", "Precision", "Recall", "F1-Score", "Classification time"});
    const std::string time = format_duration(report.classification_seconds) +
                             (report.total_pipeline_seconds
                                  ? " (total " + format_duration(*report.total_pipeline_seconds) + ")"
                                  : "");
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& m = report.per_class[c];
        t.add({c == 0 ? model_label : "", std::to_string(m.class_id), fixed(m.precision), fixed(m.recall), fixed(m.f1),
               c == 0 ? time : ""});
    }
    std::string out = t.str();
    out += "accuracy " + fixed(report.accuracy, 4) + "  macro-F1 " + fixed(report.macro_f1, 4) + "  features " +
           report.feature_kind + "  model " + report.model_descriptor + "\n";
    return out;
}

std::string render_cv_table(std::span<const CvRow> rows) {
    std::size_t k = 0;
    for (const auto& r : rows)
        if (r.result) k = std::max(k, r.result->fold_accuracies.size());
    std::vector<std::string> header{"Features"};
    for (std::size_t f = 0; f < k; ++f) header.push_back("Fold " + std::to_string(f + 1));
    header.emplace_back("Mean");
    TextTable t(header);
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.label};
        if (!r.result) {
            cells.resize(k + 1, "-");
            cells.emplace_back("failed");
        } else {
            for (std::size_t f = 0; f < k; ++f)
                cells.push_back(f < r.result->fold_accuracies.size() ? fixed(r.result->fold_accuracies[f]) : "-");
            cells.push_back(fixed(100.0 * r.result->mean_accuracy));
        }
        t.add(std::move(cells));
    }
    return t.str();
}

std::string render_comparison_table(std::span<const ComparisonRow> rows) {
    TextTable t({"Features", "Tweets", "Precision", "Recall", "F1-Score", "Accuracy", "Classification time",
                 "Total pipeline time"});
    for (const auto& r : rows) {
        if (!r.report) {
            t.add({r.feature, "-", "-", "-", "-", "-", "-", "failed: " + r.error});
            continue;
        }
        const auto& rep = *r.report;
        for (std::size_t c = 0; c < 2; ++c) {
            const auto& m = rep.per_class[c];
            t.add({c == 0 ? r.feature : "", std::to_string(m.class_id), fixed(m.precision), fixed(m.recall), fixed(m.f1),
                   c == 0 ? fixed(rep.accuracy) : "", c == 0 ? format_duration(rep.classification_seconds) : "",
                   c == 0 && rep.total_pipeline_seconds ? format_duration(*rep.total_pipeline_seconds) : ""});
        }
    }
    return t.str();
}

std::string render_summary_row(const EvaluationReport& report, const std::string& model_label) {
    TextTable t({"Author", "Features", "Models", "Precision", "Recall", "F1-Score", "Accuracy"});
    const double p = (report.per_class[0].precision + report.per_class[1].precision) / 2.0;
    const double r = (report.per_class[0].recall + report.per_class[1].recall) / 2.0;
    t.add({"trollstack", report.feature_kind, model_label, fixed(p), fixed(r), fixed(report.macro_f1),
           fixed(100.0 * report.accuracy, 0) + "%"});
    return t.str();
}

}  // namespace trollstack::evaluation
