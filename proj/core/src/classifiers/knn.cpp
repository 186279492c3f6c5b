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
#include <cmath>
#include <numeric>

#include "classifiers/fitters.hpp"
#include "trollstack/error.hpp"
#include "trollstack/parallel.hpp"

namespace trollstack::classifiers {

KNearestNeighbors::KNearestNeighbors(ClassifierSpec spec, FeatureMatrix train, std::vector<int> labels)
    : TrainedClassifier(std::move(spec), train.cols()), train_(std::move(train)), labels_(std::move(labels)) {
    if (labels_.size() != train_.rows()) throw ConfigError("knn label count does not match training rows");
    const std::size_t k = std::get<KnnParams>(this->spec().hyperparameters).k;
    if (k < 1 || k > train_.rows())
        throw ConfigError("knn k=" + std::to_string(k) + " must lie in [1, " + std::to_string(train_.rows()) + "]");

    norms_.resize(train_.rows());
    for (std::size_t i = 0; i < train_.rows(); ++i) norms_[i] = std::sqrt(train_.row(i).squared_norm());

    if (!train_.is_dense()) {
        col_ptr_.assign(train_.cols() + 1, 0);
        for (std::size_t i = 0; i < train_.rows(); ++i)
            for (std::uint32_t c : train_.row(i).cols) ++col_ptr_[c + 1];
        std::partial_sum(col_ptr_.begin(), col_ptr_.end(), col_ptr_.begin());
        post_rows_.resize(col_ptr_.back());
        post_values_.resize(col_ptr_.back());
        std::vector<std::size_t> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
        for (std::size_t i = 0; i < train_.rows(); ++i) {
            const auto row = train_.row(i);
            for (std::size_t k2 = 0; k2 < row.cols.size(); ++k2) {
                const std::size_t slot = cursor[row.cols[k2]]++;
                post_rows_[slot] = static_cast<std::uint32_t>(i);
                post_values_[slot] = row.values[k2];
            }
        }
    }
}

void KNearestNeighbors::neighbors_into(const RowView& query, std::vector<double>& dist,
                                       std::vector<std::size_t>& order) const {
    const std::size_t n = train_.rows();
    const double query_norm = std::sqrt(query.squared_norm());
    dist.assign(n, 0.0);  // holds dot products first

    if (query_norm > 0.0) {
        if (train_.is_dense()) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto row = train_.row(i);
                double dot = 0.0;
                if (query.dense) {
                    for (std::size_t j = 0; j < row.values.size(); ++j) dot += query.values[j] * row.values[j];
                } else {
                    for (std::size_t k = 0; k < query.cols.size(); ++k) dot += query.values[k] * row.values[query.cols[k]];
                }
                dist[i] = dot;
            }
        } else {
            // feature-ordered accumulation over postings
            query.for_each_nonzero([&](std::uint32_t j, double qv) {
                if (j >= train_.cols()) return;
                for (std::size_t p = col_ptr_[j]; p < col_ptr_[j + 1]; ++p) dist[post_rows_[p]] += qv * post_values_[p];
            });
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (query_norm == 0.0 || norms_[i] == 0.0) dist[i] = 1.0;
        else dist[i] = 1.0 - dist[i] / (query_norm * norms_[i]);
    }

    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t k = this->k();
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return dist[a] != dist[b] ? dist[a] < dist[b] : a < b; });
    order.resize(k);
}

std::vector<std::size_t> KNearestNeighbors::neighbors(const RowView& query) const {
    std::vector<double> dist;
    std::vector<std::size_t> order;
    neighbors_into(query, dist, order);
    return order;
}

void KNearestNeighbors::predict_rows(const FeatureMatrix& X, std::span<double> out) const {
    const std::size_t n_chunks = std::min<std::size_t>(X.rows(), 64);
    if (n_chunks == 0) return;
    parallel_for(n_chunks, [&](std::size_t chunk) {
        std::vector<double> dist;
        std::vector<std::size_t> order;
        const std::size_t lo = chunk * X.rows() / n_chunks;
        const std::size_t hi = (chunk + 1) * X.rows() / n_chunks;
        for (std::size_t i = lo; i < hi; ++i) {
            neighbors_into(X.row(i), dist, order);
            std::size_t positives = 0;
            for (std::size_t idx : order) positives += static_cast<std::size_t>(labels_[idx] == 1);
            out[i] = static_cast<double>(positives) / static_cast<double>(order.size());
        }
    });
}

nlohmann::json KNearestNeighbors::state() const { return {{"labels", labels_}, {"matrix", train_.to_json()}}; }

namespace detail {

KNearestNeighbors fit_knn(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    check_training_inputs(X, y);
    return KNearestNeighbors(spec, X, std::vector<int>(y.begin(), y.end()));
}

}  // namespace detail

KNearestNeighbors fit_knn(const FeatureMatrix& X, std::span<const int> y, const KnnParams& params) {
    ClassifierSpec spec{Algorithm::knn, params, 0};
    spec.validate();
    return detail::fit_knn(spec, X, y);
}

}  // namespace trollstack::classifiers
