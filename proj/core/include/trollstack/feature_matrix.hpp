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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace trollstack {

enum class FeatureKind { bow, tfidf, word2vec, glove, meta };

const char* to_string(FeatureKind kind) noexcept;
/// Throws ConfigError for unknown names.
FeatureKind feature_kind_from_string(const std::string& name);

/// One row of a FeatureMatrix. Sparse rows carry sorted column indices; dense
/// rows carry every column and an empty index span.
struct RowView {
    std::span<const std::uint32_t> cols;
    std::span<const double> values;
    bool dense = false;

    template <typename Fn>
    void for_each_nonzero(Fn&& fn) const {
        if (dense) {
            for (std::size_t j = 0; j < values.size(); ++j)
                if (values[j] != 0.0) fn(static_cast<std::uint32_t>(j), values[j]);
        } else {
            for (std::size_t k = 0; k < cols.size(); ++k) fn(cols[k], values[k]);
        }
    }

    /// Value at column j (0 when absent).
    double at(std::uint32_t j) const;
    double dot(std::span<const double> weights) const;
    double squared_norm() const;
};

/// n_rows x n_cols numeric matrix, either CSR sparse (no stored zeros) or dense row-major.
class FeatureMatrix {
public:
    enum class Storage { sparse, dense };

    FeatureMatrix() = default;

    static FeatureMatrix dense(std::size_t rows, std::size_t cols, std::vector<double> values,
                               FeatureKind kind);
    static FeatureMatrix empty_sparse(std::size_t cols, FeatureKind kind);

    /// Appends a sparse row. Entries must have strictly increasing column indices < cols();
    /// zero values are dropped.
    void append_sparse_row(std::span<const std::pair<std::uint32_t, double>> entries);
    void append_dense_row(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Storage storage() const noexcept { return storage_; }
    FeatureKind kind() const noexcept { return kind_; }
    bool is_dense() const noexcept { return storage_ == Storage::dense; }
    std::size_t stored_values() const noexcept { return values_.size(); }

    RowView row(std::size_t i) const;
    double at(std::size_t i, std::size_t j) const { return row(i).at(static_cast<std::uint32_t>(j)); }

    FeatureMatrix select_rows(std::span<const std::size_t> ids) const;
    std::vector<double> to_dense() const;

    nlohmann::json to_json() const;
    static FeatureMatrix from_json(const nlohmann::json& j);

    friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

private:
    Storage storage_ = Storage::sparse;
    FeatureKind kind_ = FeatureKind::bow;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_idx_;
    std::vector<double> values_;
};

}  // namespace trollstack
