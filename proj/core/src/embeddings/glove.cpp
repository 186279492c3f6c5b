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
#include <unordered_map>

#include "trollstack/embeddings.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

namespace trollstack::embeddings {

Cooccurrence build_cooccurrence(std::span<const corpus::TokenSpan> docs, std::size_t window, std::size_t min_count) {
    std::map<std::string, std::size_t, std::less<>> counts;
    for (const auto& doc : docs)
        for (const auto& token : doc) ++counts[token];

    Cooccurrence cooc;
    std::map<std::string_view, std::uint32_t, std::less<>> index;
    for (const auto& [term, count] : counts) {
        if (count < min_count) continue;
        index.emplace(term, static_cast<std::uint32_t>(cooc.terms.size()));
        cooc.terms.push_back(term);
    }

    std::unordered_map<std::uint64_t, double> cells;
    std::vector<std::uint32_t> ids;
    for (const auto& doc : docs) {
        ids.clear();
        for (const auto& token : doc)
            if (auto it = index.find(token); it != index.end()) ids.push_back(it->second);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t d = 1; d <= window && i + d < ids.size(); ++d) {
                const double weight = 1.0 / static_cast<double>(d);
                const std::uint64_t a = ids[i];
                const std::uint64_t b = ids[i + d];
                cells[(a << 32) | b] += weight;
                cells[(b << 32) | a] += weight;
            }
        }
    }
    cooc.entries.reserve(cells.size());
    for (const auto& [key, count] : cells)
        cooc.entries.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffu), count});
    std::sort(cooc.entries.begin(), cooc.entries.end(), [](const auto& x, const auto& y) {
        return x.center != y.center ? x.center < y.center : x.context < y.context;
    });
    return cooc;
}

GloveParameters GloveParameters::zeros(std::size_t vocab, std::size_t dim) {
    GloveParameters p;
    p.vocab = vocab;
    p.dim = dim;
    p.word.assign(vocab * dim, 0.0);
    p.context.assign(vocab * dim, 0.0);
    p.word_bias.assign(vocab, 0.0);
    p.context_bias.assign(vocab, 0.0);
    return p;
}

GloveParameters GloveParameters::random(std::size_t vocab, std::size_t dim, std::uint64_t seed) {
    auto p = zeros(vocab, dim);
    Rng rng(seed);
    const double scale = 1.0 / static_cast<double>(dim);
    for (auto* block : {&p.word, &p.context, &p.word_bias, &p.context_bias})
        for (double& v : *block) v = rng.uniform(-0.5, 0.5) * scale;
    return p;
}

double glove_weight(double x, double x_max, double alpha) {
    if (x >= x_max) return 1.0;
    return std::pow(x / x_max, alpha);
}

namespace {

double residual(const Cooccurrence::Entry& e, const GloveParameters& p) {
    const double* w = p.word.data() + e.center * p.dim;
    const double* c = p.context.data() + e.context * p.dim;
    double dot = 0.0;
    for (std::size_t d = 0; d < p.dim; ++d) dot += w[d] * c[d];
    return dot + p.word_bias[e.center] + p.context_bias[e.context] - std::log(e.count);
}

}  // namespace

double glove_loss(const Cooccurrence& cooc, const GloveParameters& params, const GloveConfig& config) {
    double loss = 0.0;
    for (const auto& e : cooc.entries) {
        const double r = residual(e, params);
        loss += glove_weight(e.count, config.x_max, config.alpha) * r * r;
    }
    return loss;
}

GloveParameters glove_gradient(const Cooccurrence& cooc, const GloveParameters& params, const GloveConfig& config) {
    auto grad = GloveParameters::zeros(params.vocab, params.dim);
    const std::size_t dim = params.dim;
    for (const auto& e : cooc.entries) {
        const double g = 2.0 * glove_weight(e.count, config.x_max, config.alpha) * residual(e, params);
        const double* w = params.word.data() + e.center * dim;
        const double* c = params.context.data() + e.context * dim;
        double* gw = grad.word.data() + e.center * dim;
        double* gc = grad.context.data() + e.context * dim;
        for (std::size_t d = 0; d < dim; ++d) {
            gw[d] += g * c[d];
            gc[d] += g * w[d];
        }
        grad.word_bias[e.center] += g;
        grad.context_bias[e.context] += g;
    }
    return grad;
}

EmbeddingTable train_glove(std::span<const corpus::TokenSpan> train_docs, const GloveConfig& config) {
    config.validate();
    const auto cooc = build_cooccurrence(train_docs, config.window, config.min_count);
    if (cooc.entries.empty()) throw TrainingError("GloVe co-occurrence table is empty");

    const std::size_t dim = config.dim;
    auto params = GloveParameters::random(cooc.terms.size(), dim, config.seed);
    // AdaGrad accumulators start at 1
    auto hist = GloveParameters::zeros(cooc.terms.size(), dim);
    for (auto* block : {&hist.word, &hist.context, &hist.word_bias, &hist.context_bias})
        std::fill(block->begin(), block->end(), 1.0);

    std::vector<std::size_t> order(cooc.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(config.seed, 1));
    std::vector<double> grad_w(dim), grad_c(dim);
    const double rate = config.learning_rate;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t idx : order) {
            const auto& e = cooc.entries[idx];
            const double g = 2.0 * glove_weight(e.count, config.x_max, config.alpha) * residual(e, params);
            if (!std::isfinite(g)) throw TrainingError("GloVe diverged (non-finite gradient)");
            double* w = params.word.data() + e.center * dim;
            double* c = params.context.data() + e.context * dim;
            double* hw = hist.word.data() + e.center * dim;
            double* hc = hist.context.data() + e.context * dim;
            for (std::size_t d = 0; d < dim; ++d) {
                grad_w[d] = g * c[d];
                grad_c[d] = g * w[d];
            }
            for (std::size_t d = 0; d < dim; ++d) {
                w[d] -= rate * grad_w[d] / std::sqrt(hw[d]);
                c[d] -= rate * grad_c[d] / std::sqrt(hc[d]);
                hw[d] += grad_w[d] * grad_w[d];
                hc[d] += grad_c[d] * grad_c[d];
            }
            params.word_bias[e.center] -= rate * g / std::sqrt(hist.word_bias[e.center]);
            params.context_bias[e.context] -= rate * g / std::sqrt(hist.context_bias[e.context]);
            hist.word_bias[e.center] += g * g;
            hist.context_bias[e.context] += g * g;
        }
    }

    EmbeddingTable table(dim, EmbeddingSource::trained_glove);
    std::vector<double> combined(dim);
    for (std::size_t t = 0; t < cooc.terms.size(); ++t) {
        for (std::size_t d = 0; d < dim; ++d)
            combined[d] = params.word[t * dim + d] + params.context[t * dim + d];
        table.set(cooc.terms[t], combined);
    }
    table.set_metadata({{"seed", config.seed}, {"config", config.to_json()}});
    return table;
}

EmbeddingTable train_glove(std::span<const corpus::LabeledDocument> train_docs, const GloveConfig& config) {
    const auto views = corpus::token_views(train_docs);
    return train_glove(std::span<const corpus::TokenSpan>(views), config);
}

}  // namespace trollstack::embeddings
