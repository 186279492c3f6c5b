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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/feature_matrix.hpp"

namespace trollstack::classifiers {

enum class Algorithm { dt, rf, lsvc, lr, knn };

const char* to_string(Algorithm algorithm) noexcept;
Algorithm algorithm_from_string(const std::string& name);

struct TreeParams {
    std::size_t max_depth = 30;
    std::size_t min_samples_split = 2;
};

/// Candidate features per split: ceil(sqrt(n_features)), all features, or a fixed count.
struct MaxFeatures {
    enum class Rule { sqrt, all, fixed };
    Rule rule = Rule::sqrt;
    std::size_t count = 0;

    /// 0 means "consider every feature".
    std::size_t resolve(std::size_t n_features) const;
};

struct ForestParams {
    std::size_t n_trees = 100;
    TreeParams tree;
    MaxFeatures max_features;
    bool bootstrap = true;
};

struct SvcParams {
    double lambda = 1e-4;
    std::size_t epochs = 20;
    /// Value of the constant feature that carries the intercept.
    double intercept_scaling = 1.0;
};

struct LogisticParams {
    double lambda = 1e-4;
    double step = 0.1;
    std::size_t max_epochs = 500;
    double tolerance = 1e-4;
};

struct KnnParams {
    std::size_t k = 5;
};

using Hyperparameters = std::variant<TreeParams, ForestParams, SvcParams, LogisticParams, KnnParams>;

struct ClassifierSpec {
    Algorithm algorithm = Algorithm::dt;
    Hyperparameters hyperparameters = TreeParams{};
    std::uint64_t seed = 0;

    static ClassifierSpec defaults(Algorithm algorithm, std::uint64_t seed = 0);

    /// Throws ConfigError when hyperparameters do not match the algorithm or are out of range.
    void validate() const;

    nlohmann::json to_json() const;
    /// Missing hyperparameters take their defaults; unknown keys are rejected.
    static ClassifierSpec from_json(const nlohmann::json& j);
};

nlohmann::json hyperparameters_to_json(const Hyperparameters& hp);

struct Prediction {
    std::vector<int> labels;
    std::vector<double> probabilities;  // P(aggressive)
};

/// Decision rule shared by every model: ties at 0.5 go to the aggressive class.
inline int label_for(double probability) noexcept { return probability >= 0.5 ? 1 : 0; }

class TrainedClassifier {
public:
    static constexpr int kFormatVersion = 1;

    virtual ~TrainedClassifier() = default;

    const ClassifierSpec& spec() const noexcept { return spec_; }
    std::size_t n_features() const noexcept { return n_features_; }

    /// P(aggressive) per row. Throws ShapeError when X.cols() != n_features().
    std::vector<double> predict_proba(const FeatureMatrix& X) const;

    /// Envelope {format_version, algorithm, hyperparameters, seed, n_features, state}.
    nlohmann::json to_json() const;

protected:
    TrainedClassifier(ClassifierSpec spec, std::size_t n_features)
        : spec_(std::move(spec)), n_features_(n_features) {}

    virtual void predict_rows(const FeatureMatrix& X, std::span<double> out) const = 0;
    virtual nlohmann::json state() const = 0;

private:
    ClassifierSpec spec_;
    std::size_t n_features_;
};

Prediction predict(const TrainedClassifier& model, const FeatureMatrix& X);

std::unique_ptr<TrainedClassifier> fit(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y);

std::unique_ptr<TrainedClassifier> load_classifier(const nlohmann::json& envelope);

/// Shared fit preconditions: matching lengths, at least one row, labels in {0,1}.
void check_training_inputs(const FeatureMatrix& X, std::span<const int> y);

}  // namespace trollstack::classifiers
