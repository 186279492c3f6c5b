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

using namespace trollstack;

static void BM_CleanTweet(benchmark::State& state) {
    const auto& records = bench::tweets(1000);
    const auto stopwords = corpus::StopWords::load(TROLLSTACK_STOPWORDS_FILE);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(corpus::clean(records[i++ % records.size()].content, stopwords));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CleanTweet);

static void BM_Prepare(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto& records = bench::tweets(n);
    const auto stopwords = corpus::StopWords::load(TROLLSTACK_STOPWORDS_FILE);
    for (auto _ : state) benchmark::DoNotOptimize(corpus::prepare(std::span(records.data(), n), stopwords));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Prepare)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_StratifiedSplit(benchmark::State& state) {
    const auto d = bench::docs(20000);
    for (auto _ : state) benchmark::DoNotOptimize(corpus::stratified_split(d, 0.2, 42));
}
BENCHMARK(BM_StratifiedSplit)->Unit(benchmark::kMillisecond);
