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

#include "trollstack/ensemble.hpp"

#include <algorithm>
#include <string>

#include "json_io.hpp"
#include "trollstack/corpus.hpp"
#include "trollstack/error.hpp"
#include "trollstack/parallel.hpp"
#include "trollstack/random.hpp"

namespace trollstack::ensemble {

namespace {

std::string base_file_name(std::size_t j, Algorithm algorithm) {
    return "base_" + std::to_string(j) + "_" + classifiers::to_string(algorithm) + ".json";
}

void validate_common(const StackingSpec& spec) {
    if (spec.oof_folds < 2) throw ConfigError("stacking oof_folds must be >= 2");
    if (spec.meta_spec.algorithm != Algorithm::rf) throw ConfigError("stacking meta learner must be rf");
    spec.meta_spec.validate();
}

std::vector<int> take(std::span<const int> y, std::span<const std::size_t> ids) {
    std::vector<int> out;
    out.reserve(ids.size());
    for (std::size_t i : ids) out.push_back(y[i]);
    return out;
}

}  // namespace

StackingSpec StackingSpec::defaults(std::uint64_t seed) {
    StackingSpec spec;
    spec.seed = seed;
    for (std::size_t j = 0; j < kBaseOrder.size(); ++j)
        spec.base_specs.push_back(ClassifierSpec::defaults(kBaseOrder[j], derive_seed(seed, j + 1)));
    spec.meta_spec = ClassifierSpec::defaults(Algorithm::rf, derive_seed(seed, 100));
    return spec;
}

void StackingSpec::validate() const {
    validate_common(*this);
    if (base_specs.size() != kBaseOrder.size())
        throw ConfigError("stacking needs exactly " + std::to_string(kBaseOrder.size()) + " base specs");
    for (std::size_t j = 0; j < base_specs.size(); ++j) {
        if (base_specs[j].algorithm != kBaseOrder[j])
            throw ConfigError("stacking base " + std::to_string(j) + " must be " + classifiers::to_string(kBaseOrder[j]));
        base_specs[j].validate();
    }
}

nlohmann::json StackingSpec::to_json() const {
    nlohmann::json bases = nlohmann::json::array();
    for (const auto& s : base_specs) bases.push_back(s.to_json());
    return {{"base_specs", std::move(bases)}, {"meta_spec", meta_spec.to_json()}, {"oof_folds", oof_folds}, {"seed", seed}};
}

StackingSpec StackingSpec::from_json(const nlohmann::json& j) {
    try {
        StackingSpec spec;
        for (const auto& b : j.at("base_specs")) spec.base_specs.push_back(ClassifierSpec::from_json(b));
        spec.meta_spec = ClassifierSpec::from_json(j.at("meta_spec"));
        spec.oof_folds = j.at("oof_folds").get<std::size_t>();
        spec.seed = j.at("seed").get<std::uint64_t>();
        spec.validate();
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid stacking spec: ") + e.what());
    }
}

std::uint64_t fold_seed(const StackingSpec& spec) noexcept { return derive_seed(spec.seed, 200); }

std::unique_ptr<TrainedClassifier> SpecLearner::fit(const FeatureMatrix& X, std::span<const int> y) const {
    return classifiers::fit(spec_, X, y);
}

FeatureMatrix build_meta_features(const FeatureMatrix& X, std::span<const int> y,
                                  std::span<const Learner* const> learners, std::size_t oof_folds,
                                  std::uint64_t seed, std::vector<std::vector<std::size_t>>* folds_out) {
    if (learners.empty()) throw ConfigError("stacking needs at least one base learner");
    if (X.rows() != y.size()) throw ShapeError(X.rows(), y.size());
    if (X.rows() < oof_folds)
        throw DataError(DataErrorCode::stratification,
                        "stacking needs at least " + std::to_string(oof_folds) + " training rows, got " +
                            std::to_string(X.rows()));
    const auto folds = corpus::stratified_folds(y, oof_folds, seed);
    const std::size_t n = X.rows();
    const std::size_t width = learners.size();
    std::vector<double> cells(n * width, 0.0);

    // Fold training sets are built once and shared by every learner.
    std::vector<FeatureMatrix> fold_train(folds.size());
    std::vector<FeatureMatrix> fold_test(folds.size());
    std::vector<std::vector<int>> fold_labels(folds.size());
    std::vector<char> held_out(n);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::fill(held_out.begin(), held_out.end(), 0);
        for (std::size_t i : folds[f]) held_out[i] = 1;
        std::vector<std::size_t> train_ids;
        for (std::size_t i = 0; i < n; ++i)
            if (!held_out[i]) train_ids.push_back(i);
        fold_train[f] = X.select_rows(train_ids);
        fold_test[f] = X.select_rows(folds[f]);
        fold_labels[f] = take(y, train_ids);
    }

    parallel_for(folds.size() * width, [&](std::size_t task) {
        const std::size_t f = task / width;
        const std::size_t j = task % width;
        const auto model = learners[j]->fit(fold_train[f], fold_labels[f]);
        const auto proba = model->predict_proba(fold_test[f]);
        for (std::size_t r = 0; r < folds[f].size(); ++r) cells[folds[f][r] * width + j] = proba[r];
    });

    if (folds_out) *folds_out = folds;
    return FeatureMatrix::dense(n, width, std::move(cells), FeatureKind::meta);
}

FeatureMatrix build_meta_features(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec) {
    spec.validate();
    std::vector<SpecLearner> learners;
    for (const auto& s : spec.base_specs) learners.emplace_back(s);
    std::vector<const Learner*> ptrs;
    for (const auto& l : learners) ptrs.push_back(&l);
    return build_meta_features(X, y, ptrs, spec.oof_folds, fold_seed(spec));
}

StackedModel::StackedModel(StackingSpec spec, std::vector<std::unique_ptr<TrainedClassifier>> bases,
                           std::unique_ptr<TrainedClassifier> meta)
    : spec_(std::move(spec)), bases_(std::move(bases)), meta_(std::move(meta)) {
    if (bases_.empty() || !meta_) throw ConfigError("stacked model needs base learners and a meta learner");
    for (const auto& b : bases_)
        if (b->n_features() != bases_.front()->n_features()) throw ShapeError(bases_.front()->n_features(), b->n_features());
    if (meta_->n_features() != bases_.size()) throw ShapeError(bases_.size(), meta_->n_features());
}

FeatureMatrix StackedModel::base_probabilities(const FeatureMatrix& X) const {
    if (X.cols() != n_features()) throw ShapeError(n_features(), X.cols());
    const std::size_t width = bases_.size();
    std::vector<std::vector<double>> columns(width);
    parallel_for(width, [&](std::size_t j) { columns[j] = bases_[j]->predict_proba(X); });
    std::vector<double> cells(X.rows() * width);
    for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < width; ++j) cells[i * width + j] = columns[j][i];
    return FeatureMatrix::dense(X.rows(), width, std::move(cells), FeatureKind::meta);
}

std::vector<double> StackedModel::predict_proba(const FeatureMatrix& X) const {
    return meta_->predict_proba(base_probabilities(X));
}

void StackedModel::save(const std::filesystem::path& dir, const nlohmann::json& references) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError(DataErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
    nlohmann::json files = nlohmann::json::array();
    for (std::size_t j = 0; j < bases_.size(); ++j) {
        const std::string name = base_file_name(j, bases_[j]->spec().algorithm);
        detail::write_json_file(dir / name, bases_[j]->to_json());
        files.push_back(name);
    }
    detail::write_json_file(dir / "meta.json", meta_->to_json());
    detail::write_json_file(dir / "stacking.json", {{"format_version", kFormatVersion},
                                                    {"spec", spec_.to_json()},
                                                    {"base_files", std::move(files)},
                                                    {"meta_file", "meta.json"},
                                                    {"references", references}});
}

StackedModel StackedModel::load(const std::filesystem::path& dir) {
    const auto manifest = detail::read_json_file(dir / "stacking.json");
    try {
        if (manifest.at("format_version").get<int>() != kFormatVersion)
            throw DataError(DataErrorCode::format, "unsupported stacking format_version in " + dir.string());
        auto spec = StackingSpec::from_json(manifest.at("spec"));
        std::vector<std::unique_ptr<TrainedClassifier>> bases;
        for (const auto& name : manifest.at("base_files"))
            bases.push_back(classifiers::load_classifier(detail::read_json_file(dir / name.get<std::string>())));
        if (bases.size() != spec.base_specs.size())
            throw DataError(DataErrorCode::format, "stacking.json lists the wrong number of base files");
        auto meta = classifiers::load_classifier(detail::read_json_file(dir / manifest.at("meta_file").get<std::string>()));
        return StackedModel(std::move(spec), std::move(bases), std::move(meta));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, dir.string() + "/stacking.json: " + e.what());
    }
}

StackedModel fit_stacking(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec,
                          std::span<const Learner* const> learners) {
    validate_common(spec);
    auto meta_features = build_meta_features(X, y, learners, spec.oof_folds, fold_seed(spec));

    std::vector<std::unique_ptr<TrainedClassifier>> bases(learners.size());
    parallel_for(learners.size(), [&](std::size_t j) { bases[j] = learners[j]->fit(X, y); });
    auto meta = classifiers::fit(spec.meta_spec, meta_features, y);
    return StackedModel(spec, std::move(bases), std::move(meta));
}

StackedModel fit_stacking(const FeatureMatrix& X, std::span<const int> y, const StackingSpec& spec) {
    spec.validate();
    std::vector<SpecLearner> learners;
    for (const auto& s : spec.base_specs) learners.emplace_back(s);
    std::vector<const Learner*> ptrs;
    for (const auto& l : learners) ptrs.push_back(&l);
    return fit_stacking(X, y, spec, ptrs);
}

classifiers::Prediction predict_stacking(const StackedModel& model, const FeatureMatrix& X) {
    classifiers::Prediction out;
    out.probabilities = model.predict_proba(X);
    out.labels.reserve(out.probabilities.size());
    for (double p : out.probabilities) out.labels.push_back(classifiers::label_for(p));
    return out;
}

}  // namespace trollstack::ensemble
