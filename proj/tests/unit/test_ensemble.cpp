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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <filesystem>
#include <mutex>
#include <set>

#include "trollstack/classifiers/knn.hpp"
#include "trollstack/ensemble.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

using namespace trollstack;
using namespace trollstack::ensemble;
using trollstack::classifiers::ForestParams;

namespace {

FeatureMatrix dense_of(const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return FeatureMatrix::dense(rows.size(), rows[0].size(), flat, FeatureKind::word2vec);
}

// Probability computed from column 0 of each row.
class ColumnModel final : public TrainedClassifier {
public:
    ColumnModel(std::size_t n_features, std::function<double(double)> map)
        : TrainedClassifier(ClassifierSpec{}, n_features), map_(std::move(map)) {}

protected:
    void predict_rows(const FeatureMatrix& X, std::span<double> out) const override {
        for (std::size_t i = 0; i < X.rows(); ++i) out[i] = map_(X.at(i, 0));
    }
    nlohmann::json state() const override { return nullptr; }

private:
    std::function<double(double)> map_;
};

class ColumnLearner final : public Learner {
public:
    explicit ColumnLearner(std::function<double(double)> map) : map_(std::move(map)) {}
    std::unique_ptr<TrainedClassifier> fit(const FeatureMatrix& X, std::span<const int>) const override {
        return std::make_unique<ColumnModel>(X.cols(), map_);
    }

private:
    std::function<double(double)> map_;
};

// Column 0 carries a row id. Each fit logs the ids it saw; its model answers 1 for
// ids it was trained on and 0 otherwise.
class RecordingLearner final : public Learner {
public:
    std::unique_ptr<TrainedClassifier> fit(const FeatureMatrix& X, std::span<const int>) const override {
        std::set<int> seen;
        for (std::size_t i = 0; i < X.rows(); ++i) seen.insert(static_cast<int>(X.at(i, 0)));
        {
            std::lock_guard lock(mutex_);
            log_.push_back(seen);
        }
        return std::make_unique<ColumnModel>(X.cols(), [seen](double id) {
            return seen.count(static_cast<int>(id)) ? 1.0 : 0.0;
        });
    }
    std::vector<std::set<int>> log() const {
        std::lock_guard lock(mutex_);
        return log_;
    }

private:
    mutable std::mutex mutex_;
    mutable std::vector<std::set<int>> log_;
};

struct Toy {
    FeatureMatrix X;
    std::vector<int> y;
};

Toy random_toy(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        std::vector<double> r;
        for (std::size_t j = 0; j < d; ++j) r.push_back(rng.normal() + (j == 0 ? 1.5 * label : 0.0));
        rows.push_back(r);
        y.push_back(label);
    }
    return {dense_of(rows), y};
}

StackingSpec small_spec(std::uint64_t seed) {
    auto spec = StackingSpec::defaults(seed);
    std::get<ForestParams>(spec.base_specs[1].hyperparameters).n_trees = 10;
    std::get<ForestParams>(spec.meta_spec.hyperparameters).n_trees = 10;
    return spec;
}

std::vector<const Learner*> pointers(const std::vector<std::unique_ptr<Learner>>& owned) {
    std::vector<const Learner*> out;
    for (const auto& l : owned) out.push_back(l.get());
    return out;
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("constant stubs give a constant meta-feature matrix") {
    const auto t = random_toy(20, 3, 1);
    std::vector<std::unique_ptr<Learner>> owned;
    for (int j = 0; j < 5; ++j) owned.push_back(std::make_unique<ColumnLearner>([](double) { return 0.7; }));
    const auto learners = pointers(owned);
    const auto meta = build_meta_features(t.X, t.y, learners, 5, 3);
    CHECK(meta.rows() == 20);
    CHECK(meta.cols() == 5);
    CHECK(meta.kind() == FeatureKind::meta);
    for (double v : meta.to_dense()) CHECK(v == 0.7);
}

TEST_CASE("no out-of-fold cell comes from a model that saw its row") {
    const std::size_t n = 50;
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({static_cast<double>(i), 0.0});
        y.push_back(i % 3 == 0 ? 1 : 0);
    }
    const auto X = dense_of(rows);
    RecordingLearner recorder;
    const Learner* learners[] = {&recorder};
    const auto oof = build_meta_features(X, y, learners, 5, 7);
    for (double v : oof.to_dense()) CHECK(v == 0.0);
    // the resubstitution column would be all ones
    const auto full = recorder.fit(X, y);
    for (double v : full->predict_proba(X)) CHECK(v == 1.0);
}

TEST_CASE("one-nearest-neighbour memorizer does not leak labels out of fold") {
    const auto t = random_toy(50, 4, 2);
    ClassifierSpec one_nn = ClassifierSpec::defaults(Algorithm::knn);
    one_nn.hyperparameters = classifiers::KnnParams{1};
    const SpecLearner memorizer(one_nn);
    const Learner* learners[] = {&memorizer};
    const auto oof = build_meta_features(t.X, t.y, learners, 5, 3).to_dense();
    const auto resub = memorizer.fit(t.X, t.y)->predict_proba(t.X);
    for (std::size_t i = 0; i < t.y.size(); ++i) CHECK(resub[i] == static_cast<double>(t.y[i]));
    std::vector<double> y_as_double(t.y.begin(), t.y.end());
    CHECK(oof != y_as_double);
    CHECK(oof != resub);
}

TEST_CASE("two folds over four rows train on the opposite half") {
    const auto X = dense_of({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    const std::vector<int> y{0, 0, 1, 1};
    RecordingLearner recorder;
    const Learner* learners[] = {&recorder};
    std::vector<std::vector<std::size_t>> folds;
    const auto oof = build_meta_features(X, y, learners, 2, 11, &folds);
    REQUIRE(folds.size() == 2);
    const auto log = recorder.log();
    REQUIRE(log.size() == 2);
    for (const auto& fold : folds) {
        CHECK(fold.size() == 2);
        std::set<int> complement{0, 1, 2, 3};
        for (auto i : fold) complement.erase(static_cast<int>(i));
        CHECK(std::count(log.begin(), log.end(), complement) == 1);
        // each fold holds one row of each class
        CHECK(y[fold[0]] != y[fold[1]]);
    }
    for (double v : oof.to_dense()) CHECK(v == 0.0);
}

TEST_CASE("informative stubs make a perfect stack") {
    const auto t = random_toy(40, 3, 4);
    // column 0 is replaced by the label itself
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < t.y.size(); ++i) rows.push_back({static_cast<double>(t.y[i]), t.X.at(i, 1)});
    const auto X = dense_of(rows);
    std::vector<std::unique_ptr<Learner>> owned;
    for (int j = 0; j < 5; ++j) owned.push_back(std::make_unique<ColumnLearner>([](double v) { return 0.1 + 0.8 * v; }));
    const auto learners = pointers(owned);
    const auto model = fit_stacking(X, t.y, small_spec(5), learners);
    CHECK(model.n_bases() == 5);
    CHECK(predict_stacking(model, X).labels == t.y);
    // bases emit 0.9 everywhere on a positive-looking row
    const auto q = dense_of({{1.0, -3.0}});
    CHECK(model.base_probabilities(q).to_dense() == std::vector<double>(5, 0.9));
    CHECK(predict_stacking(model, q).labels[0] == 1);
}

TEST_CASE("ten-row stack runs end to end") {
    const auto t = random_toy(10, 3, 6);
    const auto model = fit_stacking(t.X, t.y, small_spec(1));
    const auto p = predict_stacking(model, t.X);
    CHECK(p.labels.size() == 10);
    CHECK(model.meta().n_features() == 5);
    for (std::size_t j = 0; j < 5; ++j) CHECK(model.base(j).spec().algorithm == kBaseOrder[j]);
}

TEST_CASE("too few rows for the folds is a stratification error") {
    const auto t = random_toy(4, 2, 7);
    try {
        fit_stacking(t.X, t.y, small_spec(1));
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.code() == DataErrorCode::stratification);
    }
}

TEST_CASE("stacked predictions are row independent and deterministic") {
    const auto train = random_toy(60, 4, 8);
    const auto test = random_toy(12, 4, 9);
    const auto model = fit_stacking(train.X, train.y, small_spec(2));
    const auto batch = model.predict_proba(test.X);

    std::vector<std::size_t> perm(12);
    for (std::size_t i = 0; i < 12; ++i) perm[i] = (i * 5) % 12;
    const auto permuted = model.predict_proba(test.X.select_rows(perm));
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(permuted[i] == batch[perm[i]]);
        const std::size_t one[] = {i};
        CHECK(model.predict_proba(test.X.select_rows(one))[0] == batch[i]);
    }
    CHECK(fit_stacking(train.X, train.y, small_spec(2)).predict_proba(test.X) == batch);
}

TEST_CASE("meta-feature columns follow the base order") {
    const auto t = random_toy(30, 3, 10);
    const auto spec = small_spec(3);
    const auto meta = build_meta_features(t.X, t.y, spec);
    CHECK(meta.cols() == kBaseOrder.size());
    // column 3 is the knn vote, so it only takes multiples of 1/k
    for (std::size_t i = 0; i < meta.rows(); ++i) {
        const double v = meta.at(i, 3) * 5.0;
        CHECK(v == doctest::Approx(std::round(v)));
    }
}

TEST_CASE("stacking spec validation and JSON") {
    auto spec = StackingSpec::defaults(42);
    CHECK(spec.oof_folds == 5);
    CHECK(StackingSpec::from_json(spec.to_json()).to_json() == spec.to_json());
    CHECK(spec.base_specs[0].seed == derive_seed(42, 1));
    CHECK(spec.meta_spec.seed == derive_seed(42, 100));
    auto bad = spec;
    bad.oof_folds = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = spec;
    std::swap(bad.base_specs[0], bad.base_specs[1]);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = spec;
    bad.meta_spec = ClassifierSpec::defaults(Algorithm::lr);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("stacked model save and load") {
    const auto t = random_toy(40, 3, 12);
    const auto model = fit_stacking(t.X, t.y, small_spec(4));
    const auto dir = std::filesystem::temp_directory_path() / "trollstack_stack_test";
    std::filesystem::remove_all(dir);
    model.save(dir, {{"vocabulary", "vocabulary.json"}});
    CHECK(std::filesystem::exists(dir / "stacking.json"));
    CHECK(std::filesystem::exists(dir / "meta.json"));
    CHECK(std::filesystem::exists(dir / "base_3_knn.json"));
    const auto back = StackedModel::load(dir);
    CHECK(back.predict_proba(t.X) == model.predict_proba(t.X));
    CHECK(back.spec().to_json() == model.spec().to_json());
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(StackedModel::load(dir), DataError);
}

TEST_CASE("stacked model rejects the wrong width") {
    const auto t = random_toy(20, 3, 13);
    const auto model = fit_stacking(t.X, t.y, small_spec(5));
    CHECK_THROWS_AS(model.predict_proba(dense_of({{1, 2}})), ShapeError);
}

}  // TEST_SUITE
