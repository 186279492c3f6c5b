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

#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

namespace trollstack::embeddings {

namespace {

struct IndexedCorpus {
    std::vector<std::string> terms;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::uint32_t>> sentences;
    std::size_t total_tokens = 0;
};

IndexedCorpus index_corpus(std::span<const corpus::TokenSpan> docs, std::size_t min_count) {
    std::map<std::string, std::size_t, std::less<>> counts;
    for (const auto& doc : docs)
        for (const auto& token : doc) ++counts[token];

    IndexedCorpus out;
    std::map<std::string_view, std::uint32_t, std::less<>> index;
    for (const auto& [term, count] : counts) {
        if (count < min_count) continue;
        index.emplace(term, static_cast<std::uint32_t>(out.terms.size()));
        out.terms.push_back(term);
        out.counts.push_back(count);
    }
    for (const auto& doc : docs) {
        std::vector<std::uint32_t> ids;
        for (const auto& token : doc)
            if (auto it = index.find(token); it != index.end()) ids.push_back(it->second);
        out.total_tokens += ids.size();
        out.sentences.push_back(std::move(ids));
    }
    return out;
}

// Cumulative unigram^0.75 distribution sampled by binary search.
class NoiseDistribution {
public:
    explicit NoiseDistribution(const std::vector<std::size_t>& counts) {
        cumulative_.reserve(counts.size());
        double total = 0.0;
        for (std::size_t c : counts) {
            total += std::pow(static_cast<double>(c), 0.75);
            cumulative_.push_back(total);
        }
    }

    std::uint32_t sample(Rng& rng) const {
        const double u = rng.uniform01() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end()) --it;
        return static_cast<std::uint32_t>(it - cumulative_.begin());
    }

private:
    std::vector<double> cumulative_;
};

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

EmbeddingTable train_word2vec(std::span<const corpus::TokenSpan> train_docs, const Word2VecConfig& config) {
    config.validate();
    const auto data = index_corpus(train_docs, config.min_count);
    const bool has_pair = std::any_of(data.sentences.begin(), data.sentences.end(),
                                      [](const auto& s) { return s.size() >= 2; });
    if (!has_pair) throw TrainingError("word2vec needs at least one document with two or more tokens");

    const std::size_t dim = config.dim;
    const std::size_t vocab = data.terms.size();
    Rng rng(config.seed);
    std::vector<double> input(vocab * dim);
    for (double& v : input) v = rng.uniform(-0.5, 0.5) / static_cast<double>(dim);
    std::vector<double> output(vocab * dim, 0.0);
    const NoiseDistribution noise(data.counts);

    const double total_work = static_cast<double>(config.epochs * data.total_tokens) + 1.0;
    std::size_t processed = 0;
    std::vector<double> input_grad(dim);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        for (const auto& sentence : data.sentences) {
            for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
                const double rate = config.learning_rate *
                                    std::max(1e-4, 1.0 - static_cast<double>(processed) / total_work);
                ++processed;
                double* center = input.data() + sentence[pos] * dim;
                const std::size_t lo = pos >= config.window ? pos - config.window : 0;
                const std::size_t hi = std::min(sentence.size() - 1, pos + config.window);
                for (std::size_t ctx = lo; ctx <= hi; ++ctx) {
                    if (ctx == pos) continue;
                    const std::uint32_t observed = sentence[ctx];
                    std::fill(input_grad.begin(), input_grad.end(), 0.0);
                    for (std::size_t s = 0; s <= config.negatives; ++s) {
                        std::uint32_t target;
                        double label;
                        if (s == 0) {
                            target = observed;
                            label = 1.0;
                        } else {
                            target = noise.sample(rng);
                            if (target == observed) continue;
                            label = 0.0;
                        }
                        double* out = output.data() + target * dim;
                        double dot = 0.0;
                        for (std::size_t d = 0; d < dim; ++d) dot += center[d] * out[d];
                        const double g = (label - sigmoid(dot)) * rate;
                        for (std::size_t d = 0; d < dim; ++d) {
                            input_grad[d] += g * out[d];
                            out[d] += g * center[d];
                        }
                    }
                    for (std::size_t d = 0; d < dim; ++d) center[d] += input_grad[d];
                }
            }
        }
    }

    EmbeddingTable table(dim, EmbeddingSource::trained_w2v);
    for (std::size_t w = 0; w < vocab; ++w)
        table.set(data.terms[w], std::span<const double>(input.data() + w * dim, dim));
    table.set_metadata({{"seed", config.seed}, {"config", config.to_json()}});
    return table;
}

EmbeddingTable train_word2vec(std::span<const corpus::LabeledDocument> train_docs, const Word2VecConfig& config) {
    const auto views = corpus::token_views(train_docs);
    return train_word2vec(std::span<const corpus::TokenSpan>(views), config);
}

}  // namespace trollstack::embeddings
