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
#include <map>

#include "trollstack/error.hpp"
#include "trollstack/vectorizers.hpp"

namespace trollstack::vectorizers {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t n_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
    if (terms_.size() != doc_freq_.size()) throw ConfigError("vocabulary terms/doc_freq length mismatch");
    if (!std::is_sorted(terms_.begin(), terms_.end()))
        throw ConfigError("vocabulary terms must be sorted");
    index_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_)
            throw ConfigError("document frequency of '" + terms_[i] + "' out of range");
        if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second)
            throw ConfigError("duplicate vocabulary term '" + terms_[i] + "'");
    }
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double Vocabulary::idf(std::size_t index) const {
    const double n = static_cast<double>(n_docs_);
    const double df = static_cast<double>(doc_freq_.at(index));
    return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

nlohmann::json Vocabulary::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < terms_.size(); ++i)
        terms.push_back({{"term", terms_[i]}, {"doc_freq", doc_freq_[i]}});
    return {{"version", kFormatVersion}, {"n_docs", n_docs_}, {"terms", std::move(terms)}};
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
    if (j.at("version").get<int>() != kFormatVersion)
        throw ConfigError("unsupported vocabulary version " + j.at("version").dump());
    std::vector<std::string> terms;
    std::vector<std::size_t> df;
    for (const auto& entry : j.at("terms")) {
        terms.push_back(entry.at("term").get<std::string>());
        df.push_back(entry.at("doc_freq").get<std::size_t>());
    }
    return Vocabulary(std::move(terms), std::move(df), j.at("n_docs").get<std::size_t>());
}

Vocabulary fit_vocabulary(std::span<const corpus::TokenSpan> train_docs, std::size_t min_df) {
    if (train_docs.empty()) throw ConfigError("cannot fit a vocabulary on zero documents");
    std::map<std::string, std::size_t, std::less<>> df;
    std::vector<std::string_view> seen;
    for (const auto& doc : train_docs) {
        seen.assign(doc.begin(), doc.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto term : seen) {
            auto it = df.find(term);
            if (it == df.end()) df.emplace(std::string(term), 1);
            else ++it->second;
        }
    }
    std::vector<std::string> terms;
    std::vector<std::size_t> freqs;
    for (auto& [term, count] : df) {
        if (count < min_df) continue;
        terms.push_back(term);
        freqs.push_back(count);
    }
    if (terms.empty())
        throw ConfigError("vocabulary is empty after applying min_df=" + std::to_string(min_df));
    return Vocabulary(std::move(terms), std::move(freqs), train_docs.size());
}

Vocabulary fit_vocabulary(std::span<const corpus::LabeledDocument> train_docs, std::size_t min_df) {
    const auto views = corpus::token_views(train_docs);
    return fit_vocabulary(std::span<const corpus::TokenSpan>(views), min_df);
}

}  // namespace trollstack::vectorizers
