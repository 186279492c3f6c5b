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

#include "classifiers/fitters.hpp"
#include "trollstack/error.hpp"

namespace trollstack::classifiers {

LogisticRegression::LogisticRegression(ClassifierSpec spec, std::vector<double> weights, double bias,
                                       std::size_t epochs_run)
    : TrainedClassifier(std::move(spec), weights.size()),
      weights_(std::move(weights)),
      bias_(bias),
      epochs_run_(epochs_run) {}

void LogisticRegression::predict_rows(const FeatureMatrix& X, std::span<double> out) const {
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = sigmoid(X.row(i).dot(weights_) + bias_);
}

nlohmann::json LogisticRegression::state() const {
    return {{"weights", weights_}, {"bias", bias_}, {"epochs_run", epochs_run_}};
}

namespace {

// log(1 + e^z) without overflow
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

LogisticObjective logistic_objective(const FeatureMatrix& X, std::span<const int> y, std::span<const double> weights,
                                     double bias, double lambda) {
    if (weights.size() != X.cols()) throw ShapeError(X.cols(), weights.size());
    LogisticObjective out;
    out.grad_weights.assign(weights.size(), 0.0);
    const double n = static_cast<double>(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto row = X.row(i);
        const double z = row.dot(weights) + bias;
        const double target = y[i] == 1 ? 1.0 : 0.0;
        out.loss += softplus(z) - target * z;
        const double r = sigmoid(z) - target;
        row.for_each_nonzero([&](std::uint32_t j, double value) { out.grad_weights[j] += r * value; });
        out.grad_bias += r;
    }
    double penalty = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        out.grad_weights[j] = out.grad_weights[j] / n + lambda * weights[j];
        penalty += weights[j] * weights[j];
    }
    out.loss = out.loss / n + 0.5 * lambda * penalty;
    out.grad_bias /= n;
    return out;
}

namespace detail {

LogisticRegression fit_logistic_regression(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    check_training_inputs(X, y);
    const auto& params = std::get<LogisticParams>(spec.hyperparameters);
    std::vector<double> w(X.cols(), 0.0);
    double b = 0.0;
    std::size_t epoch = 0;
    for (; epoch < params.max_epochs; ++epoch) {
        const auto objective = logistic_objective(X, y, w, b, params.lambda);
        double max_grad = std::abs(objective.grad_bias);
        for (double g : objective.grad_weights) max_grad = std::max(max_grad, std::abs(g));
        if (max_grad < params.tolerance) break;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= params.step * objective.grad_weights[j];
        b -= params.step * objective.grad_bias;
    }
    return LogisticRegression(spec, std::move(w), b, epoch);
}

}  // namespace detail

LogisticRegression fit_logistic_regression(const FeatureMatrix& X, std::span<const int> y,
                                           const LogisticParams& params) {
    ClassifierSpec spec{Algorithm::lr, params, 0};
    spec.validate();
    return detail::fit_logistic_regression(spec, X, y);
}

}  // namespace trollstack::classifiers
