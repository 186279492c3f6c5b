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

#include "trollstack/feature_matrix.hpp"

#include <algorithm>

#include "trollstack/error.hpp"

namespace trollstack {

const char* to_string(FeatureKind kind) noexcept {
    switch (kind) {
    case FeatureKind::bow: return "bow";
    case FeatureKind::tfidf: return "tfidf";
    case FeatureKind::word2vec: return "word2vec";
    case FeatureKind::glove: return "glove";
    case FeatureKind::meta: return "meta";
    }
    return "unknown";
}

FeatureKind feature_kind_from_string(const std::string& name) {
    if (name == "bow") return FeatureKind::bow;
    if (name == "tfidf") return FeatureKind::tfidf;
    if (name == "word2vec") return FeatureKind::word2vec;
    if (name == "glove") return FeatureKind::glove;
    if (name == "meta") return FeatureKind::meta;
    throw ConfigError("unknown feature kind '" + name + "'");
}

double RowView::at(std::uint32_t j) const {
    if (dense) return j < values.size() ? values[j] : 0.0;
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values[static_cast<std::size_t>(it - cols.begin())];
}

double RowView::dot(std::span<const double> weights) const {
    double sum = 0.0;
    if (dense) {
        for (std::size_t j = 0; j < values.size(); ++j) sum += values[j] * weights[j];
    } else {
        for (std::size_t k = 0; k < cols.size(); ++k) sum += values[k] * weights[cols[k]];
    }
    return sum;
}

double RowView::squared_norm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return sum;
}

FeatureMatrix FeatureMatrix::dense(std::size_t rows, std::size_t cols, std::vector<double> values,
                                   FeatureKind kind) {
    if (values.size() != rows * cols)
        throw ShapeError(rows * cols, values.size());
    FeatureMatrix m;
    m.storage_ = Storage::dense;
    m.kind_ = kind;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.clear();
    m.values_ = std::move(values);
    return m;
}

FeatureMatrix FeatureMatrix::empty_sparse(std::size_t cols, FeatureKind kind) {
    FeatureMatrix m;
    m.kind_ = kind;
    m.cols_ = cols;
    return m;
}

void FeatureMatrix::append_sparse_row(std::span<const std::pair<std::uint32_t, double>> entries) {
    if (storage_ != Storage::sparse) throw ShapeError(0, 1);
    long previous = -1;
    for (const auto& [col, value] : entries) {
        if (col >= cols_) throw ShapeError(cols_, static_cast<std::size_t>(col) + 1);
        if (static_cast<long>(col) <= previous)
            throw EvaluationError("sparse row columns must be strictly increasing");
        previous = static_cast<long>(col);
        if (value == 0.0) continue;
        col_idx_.push_back(col);
        values_.push_back(value);
    }
    row_ptr_.push_back(values_.size());
    ++rows_;
}

void FeatureMatrix::append_dense_row(std::span<const double> values) {
    if (storage_ != Storage::dense) throw ShapeError(0, 1);
    if (values.size() != cols_) throw ShapeError(cols_, values.size());
    values_.insert(values_.end(), values.begin(), values.end());
    ++rows_;
}

RowView FeatureMatrix::row(std::size_t i) const {
    if (storage_ == Storage::dense) {
        return RowView{{}, std::span<const double>(values_.data() + i * cols_, cols_), true};
    }
    const std::size_t begin = row_ptr_[i];
    const std::size_t end = row_ptr_[i + 1];
    return RowView{std::span<const std::uint32_t>(col_idx_.data() + begin, end - begin),
                   std::span<const double>(values_.data() + begin, end - begin), false};
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> ids) const {
    FeatureMatrix out;
    out.storage_ = storage_;
    out.kind_ = kind_;
    out.cols_ = cols_;
    if (storage_ == Storage::dense) {
        out.row_ptr_.clear();
        out.values_.reserve(ids.size() * cols_);
        for (std::size_t id : ids) {
            const auto r = row(id);
            out.values_.insert(out.values_.end(), r.values.begin(), r.values.end());
        }
        out.rows_ = ids.size();
        return out;
    }
    out.row_ptr_.reserve(ids.size() + 1);
    for (std::size_t id : ids) {
        const auto r = row(id);
        out.col_idx_.insert(out.col_idx_.end(), r.cols.begin(), r.cols.end());
        out.values_.insert(out.values_.end(), r.values.begin(), r.values.end());
        out.row_ptr_.push_back(out.values_.size());
    }
    out.rows_ = ids.size();
    return out;
}

std::vector<double> FeatureMatrix::to_dense() const {
    if (storage_ == Storage::dense) return values_;
    std::vector<double> out(rows_ * cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        row(i).for_each_nonzero([&](std::uint32_t j, double v) { out[i * cols_ + j] = v; });
    return out;
}

nlohmann::json FeatureMatrix::to_json() const {
    nlohmann::json j;
    j["storage"] = storage_ == Storage::dense ? "dense" : "sparse";
    j["kind"] = to_string(kind_);
    j["rows"] = rows_;
    j["cols"] = cols_;
    j["values"] = values_;
    if (storage_ == Storage::sparse) {
        j["row_ptr"] = row_ptr_;
        j["col_idx"] = col_idx_;
    }
    return j;
}

FeatureMatrix FeatureMatrix::from_json(const nlohmann::json& j) {
    FeatureMatrix m;
    m.kind_ = feature_kind_from_string(j.at("kind").get<std::string>());
    m.rows_ = j.at("rows").get<std::size_t>();
    m.cols_ = j.at("cols").get<std::size_t>();
    m.values_ = j.at("values").get<std::vector<double>>();
    if (j.at("storage").get<std::string>() == "dense") {
        m.storage_ = Storage::dense;
        m.row_ptr_.clear();
        if (m.values_.size() != m.rows_ * m.cols_) throw ShapeError(m.rows_ * m.cols_, m.values_.size());
    } else {
        m.storage_ = Storage::sparse;
        m.row_ptr_ = j.at("row_ptr").get<std::vector<std::size_t>>();
        m.col_idx_ = j.at("col_idx").get<std::vector<std::uint32_t>>();
        if (m.row_ptr_.size() != m.rows_ + 1 || m.col_idx_.size() != m.values_.size() ||
            m.row_ptr_.back() != m.values_.size())
            throw ConfigError("inconsistent sparse matrix payload");
    }
    return m;
}

}  // namespace trollstack
