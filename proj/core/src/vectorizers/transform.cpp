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
#include <utility>

#include "trollstack/vectorizers.hpp"

namespace trollstack::vectorizers {

namespace {

// Sorted (column, count) pairs for the in-vocabulary tokens of one document.
std::vector<std::pair<std::uint32_t, double>> term_counts(corpus::TokenSpan doc, const Vocabulary& vocab) {
    std::vector<std::uint32_t> cols;
    cols.reserve(doc.size());
    for (const auto& token : doc)
        if (auto idx = vocab.index_of(token)) cols.push_back(*idx);
    std::sort(cols.begin(), cols.end());
    std::vector<std::pair<std::uint32_t, double>> counts;
    for (std::uint32_t c : cols) {
        if (!counts.empty() && counts.back().first == c) counts.back().second += 1.0;
        else counts.emplace_back(c, 1.0);
    }
    return counts;
}

}  // namespace

FeatureMatrix bow_transform(std::span<const corpus::TokenSpan> docs, const Vocabulary& vocab, BowMode mode) {
    auto m = FeatureMatrix::empty_sparse(vocab.size(), FeatureKind::bow);
    for (const auto& doc : docs) {
        auto counts = term_counts(doc, vocab);
        if (mode == BowMode::binary)
            for (auto& entry : counts) entry.second = 1.0;
        m.append_sparse_row(counts);
    }
    return m;
}

FeatureMatrix bow_transform(std::span<const corpus::LabeledDocument> docs, const Vocabulary& vocab, BowMode mode) {
    const auto views = corpus::token_views(docs);
    return bow_transform(std::span<const corpus::TokenSpan>(views), vocab, mode);
}

FeatureMatrix tfidf_transform(std::span<const corpus::TokenSpan> docs, const Vocabulary& vocab) {
    auto m = FeatureMatrix::empty_sparse(vocab.size(), FeatureKind::tfidf);
    for (const auto& doc : docs) {
        auto counts = term_counts(doc, vocab);
        double norm2 = 0.0;
        for (auto& [col, value] : counts) {
            value *= vocab.idf(col);
            norm2 += value * value;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& entry : counts) entry.second *= inv;
        }
        m.append_sparse_row(counts);
    }
    return m;
}

FeatureMatrix tfidf_transform(std::span<const corpus::LabeledDocument> docs, const Vocabulary& vocab) {
    const auto views = corpus::token_views(docs);
    return tfidf_transform(std::span<const corpus::TokenSpan>(views), vocab);
}

}  // namespace trollstack::vectorizers
