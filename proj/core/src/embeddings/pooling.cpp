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

#include <cmath>

#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"

namespace trollstack::embeddings {

std::vector<double> pool_document(corpus::TokenSpan tokens, const EmbeddingTable& table) {
    std::vector<double> mean(table.dim(), 0.0);
    std::size_t hits = 0;
    for (const auto& token : tokens) {
        auto v = table.find(token);
        if (!v) continue;
        for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += (*v)[d];
        ++hits;
    }
    if (hits > 0)
        for (double& m : mean) m /= static_cast<double>(hits);
    return mean;
}

FeatureMatrix embed_corpus(std::span<const corpus::TokenSpan> docs, const EmbeddingTable& table, FeatureKind kind) {
    if (table.empty()) throw ConfigError("cannot embed with an empty table");
    std::vector<double> values;
    values.reserve(docs.size() * table.dim());
    for (const auto& doc : docs) {
        auto row = pool_document(doc, table);
        values.insert(values.end(), row.begin(), row.end());
    }
    return FeatureMatrix::dense(docs.size(), table.dim(), std::move(values), kind);
}

FeatureMatrix embed_corpus(std::span<const corpus::LabeledDocument> docs, const EmbeddingTable& table,
                           FeatureKind kind) {
    const auto views = corpus::token_views(docs);
    return embed_corpus(std::span<const corpus::TokenSpan>(views), table, kind);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace trollstack::embeddings
