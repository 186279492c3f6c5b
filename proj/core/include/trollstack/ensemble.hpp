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
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/classifiers.hpp"
#include "trollstack/feature_matrix.hpp"

namespace trollstack::ensemble {

using classifiers::Algorithm;
using classifiers::ClassifierSpec;
using classifiers::TrainedClassifier;

/// Level-one learners in meta-feature column order.
inline constexpr std::array<Algorithm, 5> kBaseOrder{Algorithm::dt, Algorithm::rf, Algorithm::lsvc,
                                                     Algorithm::knn, Algorithm::lr};

struct StackingSpec {
    std::vector<ClassifierSpec> base_specs;  // one per kBaseOrder entry
    ClassifierSpec meta_spec;                // random forest
    std::size_t oof_folds = 5;
    std::uint64_t seed = 0;

    /// Default hyperparameters everywhere. Base j is seeded with derive_seed(seed, j + 1),
    /// the meta forest with derive_seed(seed, 100).
    static StackingSpec defaults(std::uint64_t seed = 0);

    void validate() const;
    nlohmann::json to_json() const;
    static StackingSpec from_json(const nlohmann::json& j);
};

/// Seed used to draw the out-of-fold partition.
std::uint64_t fold_seed(const StackingSpec& spec) noexcept;

/// Anything that can be fit to (X, y). Tests substitute stubs and memorizers here.
class Learner {
public:
    virtual ~Learner() = default;
    virtual std::unique_ptr<TrainedClassifier> fit(const FeatureMatrix& X, std::span<const int> y) const = 0;
};

class SpecLearner final : public Learner {
public:
    explicit SpecLearner(ClassifierSpec spec) : spec_(std::move(spec)) {}
    std::unique_ptr<TrainedClassifier> fit(const FeatureMatrix& X, std::span<const int> y) const override;

private:
    ClassifierSpec spec_;
};

/// Out-of-fold P(aggressive) matrix, one column per learner. Row i of column j comes
/// from learner j fit on every fold except the one holding i. When `folds_out` is
/// given it receives the held-out positions of each fold.
FeatureMatrix build_meta_features(const FeatureMatrix& X, std::span<const int> y,
                                  std::span<const Learner* const> learners, std::size_t oof_folds,
                                  std::uint64_t seed,
                                  std::vector<std::vector<std::size_t>>* folds_out = nullptr);

FeatureMatrix build_meta_features(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec);

class StackedModel {
public:
    static constexpr int kFormatVersion = 1;

    StackedModel(StackingSpec spec, std::vector<std::unique_ptr<TrainedClassifier>> bases,
                 std::unique_ptr<TrainedClassifier> meta);

    const StackingSpec& spec() const noexcept { return spec_; }
    std::size_t n_features() const noexcept { return bases_.front()->n_features(); }
    std::size_t n_bases() const noexcept { return bases_.size(); }
    const TrainedClassifier& base(std::size_t j) const { return *bases_.at(j); }
    const TrainedClassifier& meta() const noexcept { return *meta_; }

    /// Level-one outputs as an n x n_bases meta-feature matrix.
    FeatureMatrix base_probabilities(const FeatureMatrix& X) const;
    std::vector<double> predict_proba(const FeatureMatrix& X) const;

    /// Writes base_<j>_<algorithm>.json, meta.json and stacking.json into `dir`.
    /// `references` is stored verbatim in stacking.json.
    void save(const std::filesystem::path& dir, const nlohmann::json& references = nlohmann::json::object()) const;
    static StackedModel load(const std::filesystem::path& dir);

private:
    StackingSpec spec_;
    std::vector<std::unique_ptr<TrainedClassifier>> bases_;
    std::unique_ptr<TrainedClassifier> meta_;
};

/// Builds OOF meta-features, fits the meta forest on them and refits every base on all rows.
StackedModel fit_stacking(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec);

/// Same, with caller-supplied level-one learners. spec.base_specs is ignored.
StackedModel fit_stacking(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec,
                          std::span<const Learner* const> learners);

classifiers::Prediction predict_stacking(const StackedModel& model, const FeatureMatrix& X);

}  // namespace trollstack::ensemble
