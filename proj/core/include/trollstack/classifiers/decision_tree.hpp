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

#include <cstdint>
#include <vector>

#include "trollstack/classifiers.hpp"

namespace trollstack::classifiers {

/// Binary CART tree in preorder node arrays. Internal nodes route x[feature] <= threshold left.
struct Tree {
    std::vector<std::int32_t> feature;  // -1 at leaves
    std::vector<double> threshold;
    std::vector<std::int32_t> left;
    std::vector<std::int32_t> right;
    std::vector<std::uint32_t> positives;
    std::vector<std::uint32_t> samples;

    std::size_t size() const noexcept { return feature.size(); }
    std::size_t depth() const;
    std::size_t leaves() const;
    double predict_row(const RowView& row) const;

    nlohmann::json to_json() const;
    static Tree from_json(const nlohmann::json& j);

    friend bool operator==(const Tree&, const Tree&) = default;
};

class DecisionTree final : public TrainedClassifier {
public:
    DecisionTree(ClassifierSpec spec, std::size_t n_features, Tree tree);

    const Tree& tree() const noexcept { return tree_; }

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override;
    nlohmann::json state() const override;

private:
    Tree tree_;
};

/// Gini CART. Thresholds are midpoints between consecutive distinct values; absent
/// sparse entries count as 0.0. A single-class y yields a single leaf.
DecisionTree fit_decision_tree(const FeatureMatrix& X, std::span<const int> y, const TreeParams& params = {});

}  // namespace trollstack::classifiers
