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
#include "trollstack/classifiers/decision_tree.hpp"

namespace trollstack::classifiers {

class RandomForest final : public TrainedClassifier {
public:
    RandomForest(ClassifierSpec spec, std::size_t n_features, std::vector<Tree> trees);

    const std::vector<Tree>& trees() const noexcept { return trees_; }

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override;
    nlohmann::json state() const override;

private:
    std::vector<Tree> trees_;
};

/// Bagged Gini trees. Tree t draws its bootstrap sample and split candidates from
/// derive_seed(seed, t), so results do not depend on the thread count.
RandomForest fit_random_forest(const FeatureMatrix& X, std::span<const int> y, const ForestParams& params = {},
                               std::uint64_t seed = 0);

}  // namespace trollstack::classifiers
