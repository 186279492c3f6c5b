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
#include <array>
#include <cmath>

#include "trollstack/corpus.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

namespace trollstack::corpus {

SplitIndices stratified_split(std::span<const LabeledDocument> docs, double test_fraction,
                              std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("test_fraction must lie strictly between 0 and 1");

    SplitIndices split;
    split.seed = seed;
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (docs[i].tokens.empty()) {
            split.excluded_ids.push_back(i);
            continue;
        }
        by_class[static_cast<std::size_t>(docs[i].label == 1)].push_back(i);
    }

    for (std::size_t c = 0; c < 2; ++c) {
        auto& ids = by_class[c];
        if (ids.size() < 2)
            throw DataError(DataErrorCode::stratification,
                            "class " + std::to_string(c) + " has " + std::to_string(ids.size()) +
                                " usable documents; stratification needs at least 2");
        Rng rng(derive_seed(seed, c));
        rng.shuffle(std::span<std::size_t>(ids));
        auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(ids.size()) * test_fraction));
        n_test = std::clamp<std::size_t>(n_test, 1, ids.size() - 1);
        split.test_ids.insert(split.test_ids.end(), ids.begin(), ids.begin() + static_cast<long>(n_test));
        split.train_ids.insert(split.train_ids.end(), ids.begin() + static_cast<long>(n_test), ids.end());
    }
    std::sort(split.train_ids.begin(), split.train_ids.end());
    std::sort(split.test_ids.begin(), split.test_ids.end());
    return split;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be at least 2");
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(labels[i] == 1)].push_back(i);
    for (std::size_t c = 0; c < 2; ++c) {
        if (by_class[c].size() < k)
            throw DataError(DataErrorCode::stratification,
                            "class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                                " samples, fewer than " + std::to_string(k) + " folds");
    }

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t cursor = 0;
    for (std::size_t c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, 100 + c));
        rng.shuffle(std::span<std::size_t>(by_class[c]));
        for (std::size_t id : by_class[c]) folds[cursor++ % k].push_back(id);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

CorpusStats corpus_stats(std::span<const RawRecord> records) {
    CorpusStats s;
    for (const auto& r : records) {
        ++s.total;
        if (r.label == 1) ++s.aggressive;
        else ++s.non_aggressive;
    }
    return s;
}

CorpusStats corpus_stats(std::span<const LabeledDocument> docs) {
    CorpusStats s;
    for (const auto& d : docs) {
        ++s.total;
        if (d.label == 1) ++s.aggressive;
        else ++s.non_aggressive;
    }
    return s;
}

std::vector<TokenSpan> token_views(std::span<const LabeledDocument> docs) {
    std::vector<TokenSpan> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.emplace_back(d.tokens);
    return out;
}

std::vector<TokenSpan> token_views(std::span<const std::vector<std::string>> token_lists) {
    std::vector<TokenSpan> out;
    out.reserve(token_lists.size());
    for (const auto& t : token_lists) out.emplace_back(t);
    return out;
}

std::vector<int> labels_of(std::span<const LabeledDocument> docs) {
    std::vector<int> out;
    out.reserve(docs.size());
    for (const auto& d : docs) out.push_back(d.label);
    return out;
}

std::vector<LabeledDocument> select(std::span<const LabeledDocument> docs, std::span<const std::size_t> ids) {
    std::vector<LabeledDocument> out;
    out.reserve(ids.size());
    for (std::size_t id : ids) out.push_back(docs[id]);
    return out;
}

}  // namespace trollstack::corpus
