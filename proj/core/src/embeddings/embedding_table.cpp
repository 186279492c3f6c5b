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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>

#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"

namespace trollstack::embeddings {

const char* to_string(EmbeddingSource source) noexcept {
    switch (source) {
    case EmbeddingSource::trained_w2v: return "trained_w2v";
    case EmbeddingSource::trained_glove: return "trained_glove";
    case EmbeddingSource::pretrained_file: return "pretrained_file";
    }
    return "unknown";
}

namespace {

EmbeddingSource source_from_string(const std::string& name) {
    if (name == "trained_w2v") return EmbeddingSource::trained_w2v;
    if (name == "trained_glove") return EmbeddingSource::trained_glove;
    if (name == "pretrained_file") return EmbeddingSource::pretrained_file;
    throw ConfigError("unknown embedding source '" + name + "'");
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".meta.json");
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim, EmbeddingSource source) : dim_(dim), source_(source) {
    if (dim == 0) throw ConfigError("embedding dimension must be at least 1");
}

void EmbeddingTable::set(const std::string& term, std::span<const double> vector) {
    if (vector.size() != dim_) throw ShapeError(dim_, vector.size());
    for (double v : vector)
        if (!std::isfinite(v)) throw TrainingError("non-finite component in vector for '" + term + "'");
    if (auto it = index_.find(term); it != index_.end()) {
        std::copy(vector.begin(), vector.end(), data_.begin() + static_cast<long>(it->second * dim_));
        ++duplicates_;
        return;
    }
    index_.emplace(term, terms_.size());
    terms_.push_back(term);
    data_.insert(data_.end(), vector.begin(), vector.end());
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

void EmbeddingTable::save(const std::filesystem::path& path) const {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + path.string());
        char buf[32];
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            out << terms_[i];
            for (std::size_t d = 0; d < dim_; ++d) {
                std::snprintf(buf, sizeof buf, " %.17g", data_[i * dim_ + d]);
                out << buf;
            }
            out << '\n';
        }
    }
    nlohmann::json meta = metadata_;
    meta["source"] = to_string(source_);
    meta["dim"] = dim_;
    std::ofstream side(sidecar_path(path), std::ios::binary);
    side << meta.dump(2) << '\n';
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
    EmbeddingTable table = load_pretrained(path);
    std::ifstream side(sidecar_path(path));
    if (side) {
        auto meta = nlohmann::json::parse(side);
        table.source_ = source_from_string(meta.at("source").get<std::string>());
        table.metadata_ = std::move(meta);
    }
    return table;
}

EmbeddingTable load_pretrained(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(DataErrorCode::io, "cannot open embedding file " + path.string());
    return parse_pretrained(in);
}

EmbeddingTable parse_pretrained(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::size_t pos = line.find_first_not_of(" \t");
        std::size_t end = line.find_first_of(" \t", pos);
        std::string word = line.substr(pos, end - pos);
        values.clear();
        pos = end;
        while (pos != std::string::npos) {
            pos = line.find_first_not_of(" \t", pos);
            if (pos == std::string::npos) break;
            end = line.find_first_of(" \t", pos);
            const char* first = line.data() + pos;
            const char* last = line.data() + (end == std::string::npos ? line.size() : end);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc() || ptr != last)
                throw DataError(DataErrorCode::format,
                                "non-numeric component '" + std::string(first, last) + "'", line_no);
            values.push_back(v);
            pos = end;
        }
        if (values.empty()) throw DataError(DataErrorCode::format, "line has no vector components", line_no);
        if (table.dim() == 0) {
            table = EmbeddingTable(values.size(), EmbeddingSource::pretrained_file);
        } else if (values.size() != table.dim()) {
            throw DataError(DataErrorCode::format,
                            "expected " + std::to_string(table.dim()) + " components, got " +
                                std::to_string(values.size()),
                            line_no);
        }
        table.set(word, values);
    }
    if (table.empty()) throw DataError(DataErrorCode::empty_dataset, "embedding file has no vectors");
    return table;
}

}  // namespace trollstack::embeddings
