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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/corpus.hpp"
#include "trollstack/feature_matrix.hpp"

namespace trollstack::vectorizers {

/// Lexicographically ordered term list with training document frequencies.
class Vocabulary {
public:
    static constexpr int kFormatVersion = 1;

    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs);

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t n_docs() const noexcept { return n_docs_; }
    const std::vector<std::string>& terms() const noexcept { return terms_; }
    std::size_t doc_freq(std::size_t index) const { return doc_freq_.at(index); }
    std::optional<std::uint32_t> index_of(std::string_view term) const;

    /// Smoothed inverse document frequency: ln((1 + n_docs) / (1 + df)) + 1.
    double idf(std::size_t index) const;

    nlohmann::json to_json() const;
    static Vocabulary from_json(const nlohmann::json& j);

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.n_docs_ == b.n_docs_;
    }

private:
    std::vector<std::string> terms_;
    std::vector<std::size_t> doc_freq_;
    std::size_t n_docs_ = 0;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Terms with document frequency >= min_df over the given training documents.
Vocabulary fit_vocabulary(std::span<const corpus::TokenSpan> train_docs, std::size_t min_df = 1);
Vocabulary fit_vocabulary(std::span<const corpus::LabeledDocument> train_docs, std::size_t min_df = 1);

enum class BowMode { binary, counts };

FeatureMatrix bow_transform(std::span<const corpus::TokenSpan> docs, const Vocabulary& vocab,
                            BowMode mode = BowMode::binary);
FeatureMatrix bow_transform(std::span<const corpus::LabeledDocument> docs, const Vocabulary& vocab,
                            BowMode mode = BowMode::binary);

/// Raw-count tf times smoothed idf, each non-empty row scaled to unit L2 norm.
FeatureMatrix tfidf_transform(std::span<const corpus::TokenSpan> docs, const Vocabulary& vocab);
FeatureMatrix tfidf_transform(std::span<const corpus::LabeledDocument> docs, const Vocabulary& vocab);

}  // namespace trollstack::vectorizers
