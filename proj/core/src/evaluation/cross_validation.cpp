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

#include <numeric>

#include "trollstack/error.hpp"
#include "trollstack/evaluation.hpp"
#include "trollstack/parallel.hpp"

namespace trollstack::evaluation {

nlohmann::json CvResult::to_json() const {
    return {{"schema_version", kSchemaVersion},
            {"kind", "cross_validation"},
            {"k", k},
            {"seed", seed},
            {"fold_accuracies", fold_accuracies},
            {"fold_sizes", fold_sizes},
            {"mean_accuracy", mean_accuracy},
            {"excluded_documents", excluded_documents}};
}

CvResult CvResult::from_json(const nlohmann::json& j) {
    try {
        CvResult r;
        r.k = j.at("k").get<std::size_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.fold_accuracies = j.at("fold_accuracies").get<std::vector<double>>();
        r.fold_sizes = j.at("fold_sizes").get<std::vector<std::size_t>>();
        r.mean_accuracy = j.at("mean_accuracy").get<double>();
        r.excluded_documents = j.at("excluded_documents").get<std::size_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, std::string("malformed cross-validation result: ") + e.what());
    }
}

CvResult cross_validate(std::span<const int> labels, std::size_t k, std::uint64_t seed, const FoldRunner& run_fold) {
    if (k < 2) throw ConfigError("cross-validation needs k >= 2");
    const auto folds = corpus::stratified_folds(labels, k, seed);

    CvResult result;
    result.k = k;
    result.seed = seed;
    result.fold_accuracies.assign(k, 0.0);
    result.fold_sizes.assign(k, 0);

    parallel_for(k, [&](std::size_t f) {
        std::vector<char> held_out(labels.size(), 0);
        for (std::size_t i : folds[f]) held_out[i] = 1;
        std::vector<std::size_t> train_ids;
        train_ids.reserve(labels.size() - folds[f].size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (!held_out[i]) train_ids.push_back(i);
        result.fold_accuracies[f] = run_fold(f, train_ids, folds[f]);
        result.fold_sizes[f] = folds[f].size();
    });

    result.mean_accuracy = std::accumulate(result.fold_accuracies.begin(), result.fold_accuracies.end(), 0.0) /
                           static_cast<double>(k);
    return result;
}

CvResult cross_validate(std::span<const corpus::LabeledDocument> docs, const pipeline::PipelineConfig& config,
                        std::size_t k, std::uint64_t seed, const FoldObserver& observer) {
    config.validate();
    std::vector<corpus::LabeledDocument> usable;
    std::size_t excluded = 0;
    for (const auto& d : docs) {
        if (d.tokens.empty()) ++excluded;
        else usable.push_back(d);
    }
    const auto labels = corpus::labels_of(usable);

    auto result = cross_validate(labels, k, seed, [&](std::size_t fold, std::span<const std::size_t> train_ids,
                                                      std::span<const std::size_t> test_ids) {
        const auto train = corpus::select(usable, train_ids);
        const auto test = corpus::select(usable, test_ids);
        const auto model = pipeline::fit_pipeline(config, train);
        if (observer) observer(FoldObservation{fold, model, train, test});
        const auto X = model.features().transform(test);
        return evaluate(model, X, corpus::labels_of(test)).accuracy;
    });
    result.excluded_documents = excluded;
    return result;
}

}  // namespace trollstack::evaluation
