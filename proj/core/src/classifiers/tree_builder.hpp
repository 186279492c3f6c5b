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
#include <span>
#include <vector>

#include "trollstack/classifiers/decision_tree.hpp"

namespace trollstack::classifiers::detail {

struct TreeBuildOptions {
    TreeParams params;
    std::size_t max_features = 0;  // 0 = all features
    std::uint64_t seed = 0;
};

/// Grows one Gini tree over `samples` (row indices, repeats allowed for bootstrap draws).
Tree build_tree(const FeatureMatrix& X, std::span<const int> y, std::vector<std::size_t> samples,
                const TreeBuildOptions& options);

}  // namespace trollstack::classifiers::detail
