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

#include <vector>

#include "trollstack/classifiers.hpp"

namespace trollstack::classifiers {

/// Hinge-loss linear classifier trained with the Pegasos step schedule.
/// predict_proba reports sigmoid(w.x + b): a monotone squash, not a calibrated probability.
class LinearSvc final : public TrainedClassifier {
public:
    LinearSvc(ClassifierSpec spec, std::vector<double> weights, double bias);

    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    double decision_score(const RowView& row) const { return row.dot(weights_) + bias_; }

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override;
    nlohmann::json state() const override;

private:
    std::vector<double> weights_;
    double bias_;
};

LinearSvc fit_linear_svc(const FeatureMatrix& X, std::span<const int> y, const SvcParams& params = {},
                         std::uint64_t seed = 0);

class LogisticRegression final : public TrainedClassifier {
public:
    LogisticRegression(ClassifierSpec spec, std::vector<double> weights, double bias, std::size_t epochs_run);

    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    std::size_t epochs_run() const noexcept { return epochs_run_; }

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override;
    nlohmann::json state() const override;

private:
    std::vector<double> weights_;
    double bias_;
    std::size_t epochs_run_;
};

struct LogisticObjective {
    double loss = 0.0;
    std::vector<double> grad_weights;
    double grad_bias = 0.0;
};

/// Mean log-loss plus (lambda/2)||w||^2 (intercept unpenalised) and its exact gradient.
LogisticObjective logistic_objective(const FeatureMatrix& X, std::span<const int> y, std::span<const double> weights,
                                     double bias, double lambda);

/// Full-batch gradient descent with a fixed step; stops early once the gradient max-norm < tolerance.
LogisticRegression fit_logistic_regression(const FeatureMatrix& X, std::span<const int> y,
                                           const LogisticParams& params = {});

double sigmoid(double z) noexcept;

}  // namespace trollstack::classifiers
