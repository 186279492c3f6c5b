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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/corpus.hpp"
#include "trollstack/feature_matrix.hpp"

namespace trollstack::embeddings {

enum class EmbeddingSource { trained_w2v, trained_glove, pretrained_file };

const char* to_string(EmbeddingSource source) noexcept;

/// term -> fixed-width real vector. Terms keep insertion order.
class EmbeddingTable {
public:
    EmbeddingTable() = default;
    EmbeddingTable(std::size_t dim, EmbeddingSource source);

    /// Inserts or overwrites; overwrites are counted in duplicates().
    void set(const std::string& term, std::span<const double> vector);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    EmbeddingSource source() const noexcept { return source_; }
    std::size_t duplicates() const noexcept { return duplicates_; }
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    std::optional<std::span<const double>> find(std::string_view term) const;

    /// Free-form training metadata written to the sidecar {source, dim, seed, config}.
    const nlohmann::json& metadata() const noexcept { return metadata_; }
    void set_metadata(nlohmann::json metadata) { metadata_ = std::move(metadata); }

    /// Writes `word v1 ... vD` lines (round-trip precision) plus `<path>.meta.json`.
    void save(const std::filesystem::path& path) const;
    /// Reads a table written by save(), restoring source and metadata from the sidecar.
    static EmbeddingTable load(const std::filesystem::path& path);

    friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_ && a.data_ == b.data_;
    }

private:
    std::size_t dim_ = 0;
    EmbeddingSource source_ = EmbeddingSource::pretrained_file;
    std::vector<std::string> terms_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t duplicates_ = 0;
    nlohmann::json metadata_ = nlohmann::json::object();
};

/// Header-less whitespace-separated text vectors (word2vec/GloVe text format).
EmbeddingTable load_pretrained(const std::filesystem::path& path);
EmbeddingTable parse_pretrained(std::istream& in);

// --- skip-gram with negative sampling -----------------------------------------

struct Word2VecConfig {
    std::size_t dim = 100;
    std::size_t window = 5;
    std::size_t epochs = 5;
    std::size_t negatives = 5;
    double learning_rate = 0.025;  // linearly decayed to 1e-4 of the start value
    std::size_t min_count = 1;
    std::uint64_t seed = 1;

    void validate() const;
    nlohmann::json to_json() const;
    static Word2VecConfig from_json(const nlohmann::json& j);
};

EmbeddingTable train_word2vec(std::span<const corpus::TokenSpan> train_docs, const Word2VecConfig& config);
EmbeddingTable train_word2vec(std::span<const corpus::LabeledDocument> train_docs, const Word2VecConfig& config);

// --- GloVe ------------------------------------------------------------------

struct GloveConfig {
    std::size_t dim = 100;
    std::size_t window = 10;
    std::size_t epochs = 25;
    double learning_rate = 0.05;  // AdaGrad base rate
    double x_max = 100.0;
    double alpha = 0.75;
    std::size_t min_count = 1;
    std::uint64_t seed = 1;

    void validate() const;
    nlohmann::json to_json() const;
    static GloveConfig from_json(const nlohmann::json& j);
};

/// Symmetric co-occurrence counts weighted 1/distance within the window.
struct Cooccurrence {
    struct Entry {
        std::uint32_t center;
        std::uint32_t context;
        double count;
    };
    std::vector<std::string> terms;
    std::vector<Entry> entries;  // sorted by (center, context), all counts > 0
};

Cooccurrence build_cooccurrence(std::span<const corpus::TokenSpan> docs, std::size_t window,
                                std::size_t min_count = 1);

/// Word vectors, context vectors and both bias vectors, row-major by term index.
struct GloveParameters {
    std::size_t vocab = 0;
    std::size_t dim = 0;
    std::vector<double> word;
    std::vector<double> context;
    std::vector<double> word_bias;
    std::vector<double> context_bias;

    static GloveParameters zeros(std::size_t vocab, std::size_t dim);
    static GloveParameters random(std::size_t vocab, std::size_t dim, std::uint64_t seed);
};

/// min(1, (x / x_max)^alpha)
double glove_weight(double x, double x_max, double alpha);
/// Sum over entries of f(x_ij) * (w_i . c_j + b_i + c_j - ln x_ij)^2.
double glove_loss(const Cooccurrence& cooc, const GloveParameters& params, const GloveConfig& config);
/// Exact gradient of glove_loss, shaped like params.
GloveParameters glove_gradient(const Cooccurrence& cooc, const GloveParameters& params,
                               const GloveConfig& config);

EmbeddingTable train_glove(std::span<const corpus::TokenSpan> train_docs, const GloveConfig& config);
EmbeddingTable train_glove(std::span<const corpus::LabeledDocument> train_docs, const GloveConfig& config);

// --- document features ----------------------------------------------------------

/// Mean of the in-table token vectors; zero vector when no token is in the table.
std::vector<double> pool_document(corpus::TokenSpan tokens, const EmbeddingTable& table);

FeatureMatrix embed_corpus(std::span<const corpus::TokenSpan> docs, const EmbeddingTable& table,
                           FeatureKind kind);
FeatureMatrix embed_corpus(std::span<const corpus::LabeledDocument> docs, const EmbeddingTable& table,
                           FeatureKind kind);

double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace trollstack::embeddings
