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
#include <functional>
#include <span>
#include <vector>

namespace trollstack::testing {

/// Metrics recomputed element by element, independent of the evaluation module.
struct TallyMetrics {
    double accuracy = 0.0;
    double precision[2] = {0.0, 0.0};  // indexed by class id
    double recall[2] = {0.0, 0.0};
    double f1[2] = {0.0, 0.0};
};

TallyMetrics tally_metrics(std::span<const int> y_true, std::span<const int> y_pred);

/// Largest |analytic - numeric| / max(|analytic|, |numeric|) over all coordinates,
/// numeric being the central difference with step h. Coordinates where both are
/// exactly zero are skipped.
double max_relative_gradient_error(const std::function<double(const std::vector<double>&)>& loss,
                                   const std::vector<double>& x, const std::vector<double>& analytic,
                                   double h = 1e-6);

/// Dense brute force: cosine distance to every row, full stable sort by
/// (distance, index), fraction of positive labels among the first k.
std::vector<double> brute_force_knn(const std::vector<std::vector<double>>& train, std::span<const int> labels,
                                    const std::vector<std::vector<double>>& queries, std::size_t k);

}  // namespace trollstack::testing
