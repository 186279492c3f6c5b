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

#include <numeric>

#include "classifiers/fitters.hpp"
#include "classifiers/tree_builder.hpp"
#include "trollstack/parallel.hpp"
#include "trollstack/random.hpp"

namespace trollstack::classifiers {

RandomForest::RandomForest(ClassifierSpec spec, std::size_t n_features, std::vector<Tree> trees)
    : TrainedClassifier(std::move(spec), n_features), trees_(std::move(trees)) {}

void RandomForest::predict_rows(const FeatureMatrix& X, std::span<double> out) const {
    const double n_trees = static_cast<double>(trees_.size());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const auto row = X.row(i);
        double sum = 0.0;
        for (const auto& tree : trees_) sum += tree.predict_row(row);
        out[i] = sum / n_trees;
    }
}

nlohmann::json RandomForest::state() const {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_) trees.push_back(t.to_json());
    return {{"trees", std::move(trees)}};
}

namespace detail {

RandomForest fit_random_forest(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    check_training_inputs(X, y);
    const auto& params = std::get<ForestParams>(spec.hyperparameters);
    const std::size_t n = X.rows();
    std::vector<Tree> trees(params.n_trees);
    parallel_for(params.n_trees, [&](std::size_t t) {
        const std::uint64_t tree_seed = derive_seed(spec.seed, t);
        std::vector<std::size_t> samples(n);
        if (params.bootstrap) {
            Rng rng(tree_seed);
            for (auto& s : samples) s = rng.uniform_index(n);
        } else {
            std::iota(samples.begin(), samples.end(), std::size_t{0});
        }
        TreeBuildOptions options;
        options.params = params.tree;
        options.max_features = params.max_features.resolve(X.cols());
        options.seed = derive_seed(tree_seed, 1);
        trees[t] = build_tree(X, y, std::move(samples), options);
    });
    return RandomForest(spec, X.cols(), std::move(trees));
}

}  // namespace detail

RandomForest fit_random_forest(const FeatureMatrix& X, std::span<const int> y, const ForestParams& params,
                               std::uint64_t seed) {
    ClassifierSpec spec{Algorithm::rf, params, seed};
    spec.validate();
    return detail::fit_random_forest(spec, X, y);
}

}  // namespace trollstack::classifiers
