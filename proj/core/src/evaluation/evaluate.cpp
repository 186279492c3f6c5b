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

#include <chrono>

#include "trollstack/error.hpp"
#include "trollstack/evaluation.hpp"

namespace trollstack::evaluation {

namespace {

ClassMetrics class_metrics_from_json(const nlohmann::json& j) {
    ClassMetrics m;
    m.class_id = j.at("class_id").get<int>();
    m.precision = j.at("precision").get<double>();
    m.recall = j.at("recall").get<double>();
    m.f1 = j.at("f1").get<double>();
    m.support = j.at("support").get<std::size_t>();
    const auto& d = j.at("degenerate");
    m.precision_degenerate = d.at("precision").get<bool>();
    m.recall_degenerate = d.at("recall").get<bool>();
    m.f1_degenerate = d.at("f1").get<bool>();
    return m;
}

nlohmann::json optional_number(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> optional_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

}  // namespace

double steady_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

nlohmann::json EvaluationReport::to_json() const {
    return {{"schema_version", kSchemaVersion},
            {"kind", "evaluation"},
            {"confusion", confusion.to_json()},
            {"accuracy", accuracy},
            {"per_class", {per_class[0].to_json(), per_class[1].to_json()}},
            {"macro_f1", macro_f1},
            {"timings",
             {{"classification_seconds", classification_seconds},
              {"training_seconds", optional_number(training_seconds)},
              {"total_pipeline_seconds", optional_number(total_pipeline_seconds)}}},
            {"feature_kind", feature_kind},
            {"model_descriptor", model_descriptor},
            {"seed", seed},
            {"excluded_documents", excluded_documents}};
}

EvaluationReport EvaluationReport::from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            throw DataError(DataErrorCode::format, "unsupported report schema_version");
        EvaluationReport r;
        const auto& c = j.at("confusion");
        r.confusion = {c.at("tp").get<std::size_t>(), c.at("tn").get<std::size_t>(), c.at("fp").get<std::size_t>(),
                       c.at("fn").get<std::size_t>()};
        r.accuracy = j.at("accuracy").get<double>();
        r.per_class = {class_metrics_from_json(j.at("per_class").at(0)), class_metrics_from_json(j.at("per_class").at(1))};
        r.macro_f1 = j.at("macro_f1").get<double>();
        const auto& t = j.at("timings");
        r.classification_seconds = t.at("classification_seconds").get<double>();
        r.training_seconds = optional_from(t, "training_seconds");
        r.total_pipeline_seconds = optional_from(t, "total_pipeline_seconds");
        r.feature_kind = j.at("feature_kind").get<std::string>();
        r.model_descriptor = j.at("model_descriptor").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.excluded_documents = j.at("excluded_documents").get<std::size_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, std::string("malformed evaluation report: ") + e.what());
    }
}

EvaluationReport report_from_predictions(std::span<const int> y_true, std::span<const int> y_pred) {
    EvaluationReport r;
    r.confusion = confusion(y_true, y_pred);
    const Metrics m = metrics(r.confusion);
    r.accuracy = m.accuracy;
    r.per_class = {m.negative, m.positive};
    r.macro_f1 = m.macro_f1();
    return r;
}

EvaluationReport evaluate(const ProbabilityFn& predict, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock) {
    if (X.rows() == 0) throw EvaluationError("empty test set");
    if (X.rows() != y.size()) throw ShapeError(X.rows(), y.size());
    const double start = clock();
    const std::vector<double> proba = predict(X);
    const double stop = clock();
    if (proba.size() != y.size()) throw ShapeError(y.size(), proba.size());
    std::vector<int> labels(proba.size());
    for (std::size_t i = 0; i < proba.size(); ++i) labels[i] = classifiers::label_for(proba[i]);
    EvaluationReport r = report_from_predictions(y, labels);
    r.classification_seconds = stop - start;
    return r;
}

EvaluationReport evaluate(const classifiers::TrainedClassifier& model, const FeatureMatrix& X,
                          std::span<const int> y, const Clock& clock) {
    auto r = evaluate([&](const FeatureMatrix& m) { return model.predict_proba(m); }, X, y, clock);
    r.feature_kind = to_string(X.kind());
    r.model_descriptor = classifiers::to_string(model.spec().algorithm);
    r.seed = model.spec().seed;
    return r;
}

EvaluationReport evaluate(const ensemble::StackedModel& model, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock) {
    auto r = evaluate([&](const FeatureMatrix& m) { return model.predict_proba(m); }, X, y, clock);
    r.feature_kind = to_string(X.kind());
    r.model_descriptor = "stacking";
    r.seed = model.spec().seed;
    return r;
}

EvaluationReport evaluate(const pipeline::Pipeline& model, const FeatureMatrix& X, std::span<const int> y,
                          const Clock& clock) {
    auto r = evaluate([&](const FeatureMatrix& m) { return model.predict_proba(m); }, X, y, clock);
    r.feature_kind = to_string(model.features().kind());
    r.model_descriptor = model.descriptor();
    r.seed = model.stacked() ? model.stacked()->spec().seed : model.single()->spec().seed;
    return r;
}

}  // namespace trollstack::evaluation
