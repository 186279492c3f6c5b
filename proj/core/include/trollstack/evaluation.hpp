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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/classifiers.hpp"
#include "trollstack/corpus.hpp"
#include "trollstack/ensemble.hpp"
#include "trollstack/feature_matrix.hpp"
#include "trollstack/pipeline.hpp"

namespace trollstack::evaluation {

inline constexpr int kSchemaVersion = 1;

/// Counts with label 1 (aggressive) as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + tn + fp + fn; }
    /// The same predictions read with class 0 as positive.
    ConfusionMatrix relabeled() const noexcept { return {tn, tp, fn, fp}; }

    nlohmann::json to_json() const;
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws EvaluationError on length mismatch, empty input or labels outside {0, 1}.
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

struct ClassMetrics {
    int class_id = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;  // true members of the class
    // set when the value was forced to 0 by a zero denominator
    bool precision_degenerate = false;
    bool recall_degenerate = false;
    bool f1_degenerate = false;

    nlohmann::json to_json() const;
};

struct Metrics {
    double accuracy = 0.0;
    ClassMetrics positive;  // class 1
    ClassMetrics negative;  // class 0

    double macro_f1() const noexcept { return (positive.f1 + negative.f1) / 2.0; }
};

/// Throws EvaluationError when cm.total() == 0.
Metrics metrics(const ConfusionMatrix& cm);

/// Monotonic seconds. Injected so tests can control timings.
using Clock = std::function<double()>;
double steady_seconds();

struct EvaluationReport {
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    std::array<ClassMetrics, 2> per_class;  // class 0, then class 1
    double macro_f1 = 0.0;
    double classification_seconds = 0.0;  // predict call only
    std::optional<double> training_seconds;
    std::optional<double> total_pipeline_seconds;
    std::string feature_kind;
    std::string model_descriptor;
    std::uint64_t seed = 0;
    std::size_t excluded_documents = 0;

    nlohmann::json to_json() const;
    static EvaluationReport from_json(const nlohmann::json& j);
};

/// Builds a report from labels and predicted labels; timing fields stay zero.
EvaluationReport report_from_predictions(std::span<const int> y_true, std::span<const int> y_pred);

using ProbabilityFn = std::function<std::vector<double>(const FeatureMatrix&)>;

/// Times one call of `predict`, thresholds at 0.5 and scores against y.
EvaluationReport evaluate(const ProbabilityFn& predict, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock = steady_seconds);
EvaluationReport evaluate(const classifiers::TrainedClassifier& model, const FeatureMatrix& X,
                          std::span<const int> y, const Clock& clock = steady_seconds);
EvaluationReport evaluate(const ensemble::StackedModel& model, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock = steady_seconds);
/// X must already be transformed by model.features(). Fills feature_kind and model_descriptor.
EvaluationReport evaluate(const pipeline::Pipeline& model, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock = steady_seconds);

// --- cross-validation --------------------------------------------------------

struct CvResult {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<double> fold_accuracies;
    std::vector<std::size_t> fold_sizes;
    double mean_accuracy = 0.0;
    std::size_t excluded_documents = 0;

    nlohmann::json to_json() const;
    static CvResult from_json(const nlohmann::json& j);
};

/// Returns the held-out accuracy of fold `fold` given training and test positions.
using FoldRunner = std::function<double(std::size_t fold, std::span<const std::size_t> train_ids,
                                        std::span<const std::size_t> test_ids)>;

/// Stratified k-fold driver. Folds run concurrently and each writes its own slot.
CvResult cross_validate(std::span<const int> labels, std::size_t k, std::uint64_t seed, const FoldRunner& run_fold);

struct FoldObservation {
    std::size_t fold;
    const pipeline::Pipeline& pipeline;
    std::span<const corpus::LabeledDocument> train;
    std::span<const corpus::LabeledDocument> test;
};
using FoldObserver = std::function<void(const FoldObservation&)>;

/// Rebuilds the whole pipeline (features included) on each fold's training part.
/// Documents without tokens are dropped first and counted in excluded_documents.
CvResult cross_validate(std::span<const corpus::LabeledDocument> docs, const pipeline::PipelineConfig& config,
                        std::size_t k, std::uint64_t seed, const FoldObserver& observer = {});

// --- rendering ----------------------------------------------------------------

/// "1min 48s" style, or "0.42s" under a minute.
std::string format_duration(double seconds);

/// Per-class table: Model | Tweets | Precision | Recall | F1-Score | Classification time.
std::string render_class_table(const EvaluationReport& report, const std::string& model_label = "Stacking");

struct CvRow {
    std::string label;  // feature name
    std::optional<CvResult> result;  // empty when that run failed
};
/// Features | fold accuracies | Mean (percent), one row per feature.
std::string render_cv_table(std::span<const CvRow> rows);

struct ComparisonRow {
    std::string feature;
    std::optional<EvaluationReport> report;  // empty when that run failed
    std::string error;
};
/// One row per feature: per-class metrics, accuracy, classification and total pipeline time.
std::string render_comparison_table(std::span<const ComparisonRow> rows);

/// Author | Features | Models | Precision | Recall | F1-Score | Accuracy, macro averaged.
std::string render_summary_row(const EvaluationReport& report, const std::string& model_label = "Stacking");

}  // namespace trollstack::evaluation
