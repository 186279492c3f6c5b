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

#include <cmath>
#include <numeric>

#include "classifiers/fitters.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

namespace trollstack::classifiers {

double sigmoid(double z) noexcept {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

LinearSvc::LinearSvc(ClassifierSpec spec, std::vector<double> weights, double bias)
    : TrainedClassifier(std::move(spec), weights.size()), weights_(std::move(weights)), bias_(bias) {}

void LinearSvc::predict_rows(const FeatureMatrix& X, std::span<double> out) const {
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = sigmoid(decision_score(X.row(i)));
}

nlohmann::json LinearSvc::state() const { return {{"weights", weights_}, {"bias", bias_}}; }

namespace detail {

// Pegasos over the augmented vector (x, intercept_scaling). The iterate is kept as
// scale * v so the (1 - 1/t) shrink costs O(1) on sparse rows.
LinearSvc fit_linear_svc(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    check_training_inputs(X, y);
    const auto& params = std::get<SvcParams>(spec.hyperparameters);
    const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
    const bool has_neg = std::find(y.begin(), y.end(), 0) != y.end();
    if (!has_pos || !has_neg) throw TrainingError("linear SVC needs both classes in the training labels");

    const std::size_t d = X.cols();
    const double lambda = params.lambda;
    const double bias_feature = params.intercept_scaling;
    const double radius = 1.0 / std::sqrt(lambda);
    std::vector<double> v(d + 1, 0.0);
    double scale = 1.0;
    double v_norm2 = 0.0;

    std::vector<std::size_t> order(X.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(spec.seed);
    std::size_t t = 0;

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t i : order) {
            ++t;
            const auto row = X.row(i);
            const double yi = y[i] == 1 ? 1.0 : -1.0;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double vx = row.dot(std::span<const double>(v.data(), d)) + v[d] * bias_feature;
            const double margin = yi * scale * vx;

            if (t == 1) {
                // (1 - eta*lambda) == 0 on the first step
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
                v_norm2 = 0.0;
            } else {
                scale *= 1.0 - 1.0 / static_cast<double>(t);
            }

            if (margin < 1.0) {
                const double a = eta * yi / scale;
                const double current_vx = t == 1 ? 0.0 : vx;
                v_norm2 += 2.0 * a * current_vx + a * a * (row.squared_norm() + bias_feature * bias_feature);
                row.for_each_nonzero([&](std::uint32_t j, double value) { v[j] += a * value; });
                v[d] += a * bias_feature;
            }

            const double w_norm = scale * std::sqrt(std::max(0.0, v_norm2));
            if (w_norm > radius) scale *= radius / w_norm;

            if (scale < 1e-9) {
                for (double& value : v) value *= scale;
                v_norm2 *= scale * scale;
                scale = 1.0;
            }
        }
    }

    std::vector<double> w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = scale * v[j];
    const double bias = scale * v[d] * bias_feature;
    return LinearSvc(spec, std::move(w), bias);
}

}  // namespace detail

LinearSvc fit_linear_svc(const FeatureMatrix& X, std::span<const int> y, const SvcParams& params,
                         std::uint64_t seed) {
    ClassifierSpec spec{Algorithm::lsvc, params, seed};
    spec.validate();
    return detail::fit_linear_svc(spec, X, y);
}

}  // namespace trollstack::classifiers
