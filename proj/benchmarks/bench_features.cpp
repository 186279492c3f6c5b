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

#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "trollstack/embeddings.hpp"
#include "trollstack/vectorizers.hpp"

using namespace trollstack;

static void BM_FitVocabulary(benchmark::State& state) {
    const auto d = bench::docs(static_cast<std::size_t>(state.range(0)));
    const auto views = corpus::token_views(d);
    for (auto _ : state) benchmark::DoNotOptimize(vectorizers::fit_vocabulary(views));
}
BENCHMARK(BM_FitVocabulary)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_TfidfTransform(benchmark::State& state) {
    const auto d = bench::docs(static_cast<std::size_t>(state.range(0)));
    const auto views = corpus::token_views(d);
    const auto vocab = vectorizers::fit_vocabulary(views);
    for (auto _ : state) benchmark::DoNotOptimize(vectorizers::tfidf_transform(views, vocab));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TfidfTransform)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_Word2VecEpoch(benchmark::State& state) {
    const auto d = bench::docs(2000);
    const auto views = corpus::token_views(d);
    embeddings::Word2VecConfig c;
    c.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(embeddings::train_word2vec(std::span<const corpus::TokenSpan>(views), c));
}
BENCHMARK(BM_Word2VecEpoch)->Unit(benchmark::kMillisecond);

static void BM_GloveEpoch(benchmark::State& state) {
    const auto d = bench::docs(2000);
    const auto views = corpus::token_views(d);
    embeddings::GloveConfig c;
    c.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(embeddings::train_glove(std::span<const corpus::TokenSpan>(views), c));
}
BENCHMARK(BM_GloveEpoch)->Unit(benchmark::kMillisecond);
