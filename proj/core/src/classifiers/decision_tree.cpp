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
#include <numeric>

#include "classifiers/fitters.hpp"
#include "classifiers/tree_builder.hpp"
#include "trollstack/error.hpp"

namespace trollstack::classifiers {

std::size_t Tree::depth() const {
    if (feature.empty()) return 0;
    std::size_t deepest = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [node, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        const auto i = static_cast<std::size_t>(node);
        if (feature[i] >= 0) {
            stack.emplace_back(left[i], d + 1);
            stack.emplace_back(right[i], d + 1);
        }
    }
    return deepest;
}

std::size_t Tree::leaves() const {
    return static_cast<std::size_t>(std::count(feature.begin(), feature.end(), -1));
}

double Tree::predict_row(const RowView& row) const {
    std::size_t node = 0;
    while (feature[node] >= 0) {
        const double v = row.at(static_cast<std::uint32_t>(feature[node]));
        node = static_cast<std::size_t>(v <= threshold[node] ? left[node] : right[node]);
    }
    return static_cast<double>(positives[node]) / static_cast<double>(samples[node]);
}

nlohmann::json Tree::to_json() const {
    return {{"feature", feature}, {"threshold", threshold}, {"left", left},
            {"right", right},     {"positives", positives}, {"samples", samples}};
}

Tree Tree::from_json(const nlohmann::json& j) {
    Tree t;
    t.feature = j.at("feature").get<std::vector<std::int32_t>>();
    t.threshold = j.at("threshold").get<std::vector<double>>();
    t.left = j.at("left").get<std::vector<std::int32_t>>();
    t.right = j.at("right").get<std::vector<std::int32_t>>();
    t.positives = j.at("positives").get<std::vector<std::uint32_t>>();
    t.samples = j.at("samples").get<std::vector<std::uint32_t>>();
    const std::size_t n = t.feature.size();
    if (n == 0 || t.threshold.size() != n || t.left.size() != n || t.right.size() != n ||
        t.positives.size() != n || t.samples.size() != n)
        throw ConfigError("inconsistent tree node arrays");
    for (std::size_t i = 0; i < n; ++i) {
        if (t.feature[i] < 0) {
            if (t.samples[i] == 0) throw ConfigError("tree leaf with zero samples");
            continue;
        }
        const auto l = static_cast<std::size_t>(t.left[i]);
        const auto r = static_cast<std::size_t>(t.right[i]);
        if (t.left[i] <= static_cast<std::int32_t>(i) || t.right[i] <= static_cast<std::int32_t>(i) || l >= n || r >= n)
            throw ConfigError("tree child index out of range");
    }
    return t;
}

DecisionTree::DecisionTree(ClassifierSpec spec, std::size_t n_features, Tree tree)
    : TrainedClassifier(std::move(spec), n_features), tree_(std::move(tree)) {}

void DecisionTree::predict_rows(const FeatureMatrix& X, std::span<double> out) const {
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = tree_.predict_row(X.row(i));
}

nlohmann::json DecisionTree::state() const { return {{"tree", tree_.to_json()}}; }

namespace detail {

DecisionTree fit_decision_tree(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    check_training_inputs(X, y);
    std::vector<std::size_t> samples(X.rows());
    std::iota(samples.begin(), samples.end(), std::size_t{0});
    TreeBuildOptions options;
    options.params = std::get<TreeParams>(spec.hyperparameters);
    return DecisionTree(spec, X.cols(), build_tree(X, y, std::move(samples), options));
}

}  // namespace detail

DecisionTree fit_decision_tree(const FeatureMatrix& X, std::span<const int> y, const TreeParams& params) {
    ClassifierSpec spec{Algorithm::dt, params, 0};
    spec.validate();
    return detail::fit_decision_tree(spec, X, y);
}

}  // namespace trollstack::classifiers
