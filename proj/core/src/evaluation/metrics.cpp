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

#include <string>

#include "trollstack/error.hpp"
#include "trollstack/evaluation.hpp"

namespace trollstack::evaluation {

namespace {

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
    degenerate = den == 0;
    return degenerate ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Metrics of the class currently in the positive slot of cm.
ClassMetrics positive_class_metrics(const ConfusionMatrix& cm, int class_id) {
    ClassMetrics m;
    m.class_id = class_id;
    m.support = cm.tp + cm.fn;
    m.precision = ratio(cm.tp, cm.tp + cm.fp, m.precision_degenerate);
    m.recall = ratio(cm.tp, cm.tp + cm.fn, m.recall_degenerate);
    const double sum = m.precision + m.recall;
    m.f1_degenerate = sum == 0.0;
    m.f1 = m.f1_degenerate ? 0.0 : 2.0 * (m.precision * m.recall) / sum;
    return m;
}

}  // namespace

nlohmann::json ConfusionMatrix::to_json() const { return {{"tp", tp}, {"tn", tn}, {"fp", fp}, {"fn", fn}}; }

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size())
        throw EvaluationError("label length mismatch: " + std::to_string(y_true.size()) + " true vs " +
                              std::to_string(y_pred.size()) + " predicted");
    if (y_true.empty()) throw EvaluationError("cannot score an empty label set");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const int t = y_true[i];
        const int p = y_pred[i];
        if ((t != 0 && t != 1) || (p != 0 && p != 1))
            throw EvaluationError("label outside {0,1} at position " + std::to_string(i));
        if (t == 1) (p == 1 ? cm.tp : cm.fn) += 1;
        else (p == 1 ? cm.fp : cm.tn) += 1;
    }
    return cm;
}

nlohmann::json ClassMetrics::to_json() const {
    return {{"class_id", class_id},
            {"precision", precision},
            {"recall", recall},
            {"f1", f1},
            {"support", support},
            {"degenerate", {{"precision", precision_degenerate}, {"recall", recall_degenerate}, {"f1", f1_degenerate}}}};
}

Metrics metrics(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw EvaluationError("metrics need at least one evaluated sample");
    Metrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    m.positive = positive_class_metrics(cm, 1);
    m.negative = positive_class_metrics(cm.relabeled(), 0);
    return m;
}

}  // namespace trollstack::evaluation
