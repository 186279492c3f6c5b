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

namespace trollstack::classifiers {

/// Cosine-distance k-nearest-neighbour vote. Zero vectors sit at distance 1 from
/// everything; ties are broken by the lower training-row index.
class KNearestNeighbors final : public TrainedClassifier {
public:
    KNearestNeighbors(ClassifierSpec spec, FeatureMatrix train, std::vector<int> labels);

    std::size_t k() const noexcept { return std::get<KnnParams>(spec().hyperparameters).k; }

    /// Training-row indices of the k nearest rows, nearest first.
    std::vector<std::size_t> neighbors(const RowView& query) const;

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override;
    nlohmann::json state() const override;

private:
    void neighbors_into(const RowView& query, std::vector<double>& dist, std::vector<std::size_t>& order) const;

    FeatureMatrix train_;
    std::vector<int> labels_;
    std::vector<double> norms_;
    // column-major postings for sparse training matrices
    std::vector<std::size_t> col_ptr_;
    std::vector<std::uint32_t> post_rows_;
    std::vector<double> post_values_;
};

KNearestNeighbors fit_knn(const FeatureMatrix& X, std::span<const int> y, const KnnParams& params = {});

}  // namespace trollstack::classifiers
