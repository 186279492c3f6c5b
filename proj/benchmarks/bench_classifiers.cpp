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
#include "trollstack/classifiers/decision_tree.hpp"
#include "trollstack/classifiers/knn.hpp"
#include "trollstack/classifiers/random_forest.hpp"
#include "trollstack/vectorizers.hpp"

using namespace trollstack;

namespace {

struct Data {
    FeatureMatrix X;
    std::vector<int> y;
};

const Data& tfidf_data() {
    static const Data data = [] {
        auto d = bench::docs(4000);
        std::erase_if(d, [](const auto& doc) { return doc.tokens.empty(); });
        const auto views = corpus::token_views(d);
        const auto vocab = vectorizers::fit_vocabulary(views);
        return Data{vectorizers::tfidf_transform(views, vocab), corpus::labels_of(d)};
    }();
    return data;
}

}  // namespace

static void BM_DecisionTreeFit(benchmark::State& state) {
    const auto& d = tfidf_data();
    for (auto _ : state) benchmark::DoNotOptimize(classifiers::fit_decision_tree(d.X, d.y));
}
BENCHMARK(BM_DecisionTreeFit)->Unit(benchmark::kMillisecond);

static void BM_RandomForestFit(benchmark::State& state) {
    const auto& d = tfidf_data();
    classifiers::ForestParams p;
    p.n_trees = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(classifiers::fit_random_forest(d.X, d.y, p, 1));
}
BENCHMARK(BM_RandomForestFit)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_KnnPredict(benchmark::State& state) {
    const auto& d = tfidf_data();
    const auto model = classifiers::fit_knn(d.X, d.y);
    std::vector<std::size_t> ids(500);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    const auto queries = d.X.select_rows(ids);
    for (auto _ : state) benchmark::DoNotOptimize(model.predict_proba(queries));
    state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_KnnPredict)->Unit(benchmark::kMillisecond);
