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

#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "synthetic.hpp"
#include "trollstack/classifiers/knn.hpp"
#include "trollstack/error.hpp"
#include "trollstack/evaluation.hpp"
#include "trollstack/random.hpp"

using namespace trollstack;
using namespace trollstack::evaluation;

namespace {

std::vector<int> random_labels(std::size_t n, std::uint64_t seed, double p = 0.5) {
    Rng rng(seed);
    std::vector<int> y(n);
    for (auto& v : y) v = rng.uniform01() < p ? 1 : 0;
    return y;
}

FeatureMatrix column(const std::vector<double>& values) {
    return FeatureMatrix::dense(values.size(), 1, values, FeatureKind::word2vec);
}

// Independent re-derivation straight from the four counts.
struct Derived {
    double accuracy, p1, r1, f1_1, p0, r0, f1_0;
};

Derived derive(double tp, double tn, double fp, double fn) {
    auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
    auto harmonic = [](double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); };
    Derived d{};
    d.accuracy = (tp + tn) / (tp + tn + fp + fn);
    d.p1 = ratio(tp, tp + fp);
    d.r1 = ratio(tp, tp + fn);
    d.f1_1 = harmonic(d.p1, d.r1);
    d.p0 = ratio(tn, tn + fn);
    d.r0 = ratio(tn, tn + fp);
    d.f1_0 = harmonic(d.p0, d.r0);
    return d;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("confusion counts") {
    const std::vector<int> y{1, 1, 0, 0}, p{1, 0, 0, 1};
    CHECK(confusion(y, p) == ConfusionMatrix{1, 1, 1, 1});
    const auto same = confusion(y, y);
    CHECK(same.fp == 0);
    CHECK(same.fn == 0);
    CHECK_THROWS_AS(confusion(y, std::vector<int>{1, 0}), EvaluationError);
    CHECK_THROWS_AS(confusion(std::vector<int>{}, std::vector<int>{}), EvaluationError);
    CHECK_THROWS_AS(confusion(std::vector<int>{2}, std::vector<int>{1}), EvaluationError);
}

TEST_CASE("confusion agrees with an element tally on random pairs") {
    const auto y = random_labels(200, 1), p = random_labels(200, 2);
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        if (y[i] == 1 && p[i] == 1) ++tp;
        if (y[i] == 0 && p[i] == 0) ++tn;
        if (y[i] == 0 && p[i] == 1) ++fp;
        if (y[i] == 1 && p[i] == 0) ++fn;
    }
    CHECK(confusion(y, p) == ConfusionMatrix{tp, tn, fp, fn});
    const auto m = metrics(confusion(y, p));
    const auto t = testing::tally_metrics(y, p);
    CHECK(m.accuracy == doctest::Approx(t.accuracy).epsilon(1e-12));
    CHECK(m.positive.precision == doctest::Approx(t.precision[1]).epsilon(1e-12));
    CHECK(m.negative.recall == doctest::Approx(t.recall[0]).epsilon(1e-12));
    CHECK(m.negative.f1 == doctest::Approx(t.f1[0]).epsilon(1e-12));
}

TEST_CASE("metrics on the symmetric matrix") {
    const auto m = metrics({1, 1, 1, 1});
    CHECK(m.accuracy == 0.5);
    CHECK(m.positive.precision == 0.5);
    CHECK(m.positive.recall == 0.5);
    CHECK(m.positive.f1 == 0.5);
    CHECK(m.positive.class_id == 1);
    CHECK(m.negative.class_id == 0);
}

TEST_CASE("zero denominators give flagged zeros") {
    const auto m = metrics({0, 5, 0, 5});
    CHECK(m.positive.precision == 0.0);
    CHECK(m.positive.precision_degenerate);
    CHECK(m.positive.recall == 0.0);
    CHECK_FALSE(m.positive.recall_degenerate);
    CHECK(m.positive.f1 == 0.0);
    CHECK(m.positive.f1_degenerate);
    CHECK(m.negative.recall == 1.0);
    CHECK_THROWS_AS(metrics({}), EvaluationError);
}

TEST_CASE("metrics match an independent derivation on random matrices") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        ConfusionMatrix cm{rng.uniform_index(50), rng.uniform_index(50), rng.uniform_index(50), rng.uniform_index(50)};
        if (cm.total() == 0) cm.tp = 1;
        const auto m = metrics(cm);
        const auto d = derive(double(cm.tp), double(cm.tn), double(cm.fp), double(cm.fn));
        CHECK(std::abs(m.accuracy - d.accuracy) <= 1e-12);
        CHECK(std::abs(m.positive.precision - d.p1) <= 1e-12);
        CHECK(std::abs(m.positive.recall - d.r1) <= 1e-12);
        CHECK(std::abs(m.positive.f1 - d.f1_1) <= 1e-12);
        CHECK(std::abs(m.negative.precision - d.p0) <= 1e-12);
        CHECK(std::abs(m.negative.recall - d.r0) <= 1e-12);
        CHECK(std::abs(m.negative.f1 - d.f1_0) <= 1e-12);
        CHECK(std::abs(m.macro_f1() - (d.f1_0 + d.f1_1) / 2.0) <= 1e-12);
    }
}

TEST_CASE("perfect predictions give all-ones metrics") {
    const auto y = random_labels(40, 4);
    const auto r = report_from_predictions(y, y);
    CHECK(r.accuracy == 1.0);
    for (const auto& c : r.per_class) {
        CHECK(c.precision == 1.0);
        CHECK(c.recall == 1.0);
        CHECK(c.f1 == 1.0);
    }
}

TEST_CASE("swapping labels swaps the class rows") {
    const auto y = random_labels(100, 5), p = random_labels(100, 6);
    std::vector<int> ys, ps;
    for (int v : y) ys.push_back(1 - v);
    for (int v : p) ps.push_back(1 - v);
    const auto a = report_from_predictions(y, p), b = report_from_predictions(ys, ps);
    CHECK(a.accuracy == b.accuracy);
    CHECK(confusion(ys, ps) == confusion(y, p).relabeled());
    for (int c = 0; c < 2; ++c) {
        CHECK(a.per_class[c].precision == b.per_class[1 - c].precision);
        CHECK(a.per_class[c].recall == b.per_class[1 - c].recall);
        CHECK(a.per_class[c].f1 == b.per_class[1 - c].f1);
        CHECK(a.per_class[c].support == b.per_class[1 - c].support);
    }
}

TEST_CASE("accuracy is consistent with the per-class counts") {
    const auto y = random_labels(300, 7, 0.39), p = random_labels(300, 8, 0.4);
    const auto r = report_from_predictions(y, p);
    const double correct = r.per_class[0].recall * double(r.per_class[0].support) +
                           r.per_class[1].recall * double(r.per_class[1].support);
    CHECK(std::abs(correct / 300.0 - r.accuracy) <= 1e-12);
    CHECK(r.macro_f1 == (r.per_class[0].f1 + r.per_class[1].f1) / 2.0);
}

TEST_CASE("report from a perfect stub") {
    const std::vector<int> y{0, 1, 1, 0, 1};
    const auto X = column({0, 1, 1, 0, 1});
    const auto r = evaluate([](const FeatureMatrix& m) { return m.to_dense(); }, X, y);
    CHECK(r.accuracy == 1.0);
    CHECK(r.per_class[0].f1 == 1.0);
    CHECK(r.per_class[1].f1 == 1.0);
}

TEST_CASE("constant aggressive model on imbalanced data") {
    std::vector<int> y(100, 0);
    for (std::size_t i = 0; i < 39; ++i) y[i] = 1;
    const auto X = column(std::vector<double>(100, 0.0));
    const auto r = evaluate([](const FeatureMatrix& m) { return std::vector<double>(m.rows(), 1.0); }, X, y);
    CHECK(r.accuracy == doctest::Approx(0.39));
    CHECK(r.per_class[0].recall == 0.0);
    CHECK(r.per_class[0].precision_degenerate);
    CHECK(r.per_class[1].recall == 1.0);
    CHECK(r.per_class[1].precision == doctest::Approx(0.39));
}

TEST_CASE("classification time is the predict call on the injected clock") {
    double now = 10.0;
    int calls = 0;
    const Clock clock = [&] { return now; };
    const auto X = column({0.2, 0.8});
    const auto r = evaluate(
        [&](const FeatureMatrix& m) {
            ++calls;
            now += 2.5;
            return m.to_dense();
        },
        X, std::vector<int>{0, 1}, clock);
    CHECK(calls == 1);
    CHECK(r.classification_seconds == 2.5);
    CHECK_FALSE(r.training_seconds.has_value());
}

TEST_CASE("predicting twice the rows takes at least as long") {
    Rng rng(9);
    const std::size_t n = 3000, d = 16;
    std::vector<double> flat(n * d);
    for (auto& v : flat) v = rng.normal();
    const auto X = FeatureMatrix::dense(n, d, flat, FeatureKind::word2vec);
    const auto y = random_labels(n, 10);
    const auto model = classifiers::fit_knn(X, y);
    std::vector<std::size_t> small(200), large(400);
    std::iota(small.begin(), small.end(), 0);
    std::iota(large.begin(), large.end(), 0);
    const auto Xs = X.select_rows(small), Xl = X.select_rows(large);
    const std::span<const int> ys(y.data(), 200), yl(y.data(), 400);
    double t_small = 0.0, t_large = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        t_small += evaluate(model, Xs, ys).classification_seconds;
        t_large += evaluate(model, Xl, yl).classification_seconds;
    }
    CHECK(t_large >= t_small);
}

TEST_CASE("report JSON round trip") {
    auto r = report_from_predictions(random_labels(50, 11), random_labels(50, 12));
    r.classification_seconds = 0.25;
    r.training_seconds = 3.0;
    r.feature_kind = "tfidf";
    r.model_descriptor = "lr";
    r.seed = 42;
    r.excluded_documents = 2;
    const auto j = r.to_json();
    CHECK(j.at("schema_version") == kSchemaVersion);
    const auto back = EvaluationReport::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.to_json() == j);
    CHECK_FALSE(back.total_pipeline_seconds.has_value());
}

TEST_CASE("cross-validation with a perfect stub") {
    const std::vector<int> labels{0, 1, 0, 1};
    std::set<std::size_t> seen;
    const auto cv = cross_validate(labels, 2, 5, [&](std::size_t, std::span<const std::size_t> train,
                                                      std::span<const std::size_t> test) {
        CHECK(train.size() == 2);
        CHECK(test.size() == 2);
        return 1.0;
    });
    CHECK(cv.k == 2);
    CHECK(cv.fold_accuracies == std::vector<double>{1.0, 1.0});
    CHECK(cv.mean_accuracy == 1.0);
    CHECK(CvResult::from_json(cv.to_json()).to_json() == cv.to_json());
    CHECK_THROWS(cross_validate(labels, 1, 5, [](auto, auto, auto) { return 1.0; }));
}

TEST_CASE("cross-validation folds partition the rows") {
    const auto labels = random_labels(103, 13, 0.39);
    std::vector<int> hits(103, 0);
    std::mutex m;
    const auto cv = cross_validate(labels, 10, 6, [&](std::size_t, std::span<const std::size_t> train,
                                                       std::span<const std::size_t> test) {
        std::lock_guard lock(m);
        CHECK(train.size() + test.size() == 103);
        for (auto i : test) ++hits[i];
        return static_cast<double>(test.size());
    });
    for (int h : hits) CHECK(h == 1);
    double mean = 0.0;
    for (double a : cv.fold_accuracies) mean += a;
    CHECK(cv.mean_accuracy == doctest::Approx(mean / 10.0));
}

TEST_CASE("cross-validation never shows a fold its own test vocabulary") {
    testing::SyntheticOptions opt;
    opt.n_docs = 60;
    opt.empty_fraction = 0.0;
    const auto records = testing::synthetic_tweets(opt);
    std::vector<corpus::LabeledDocument> docs;
    for (std::size_t i = 0; i < records.size(); ++i) {
        corpus::LabeledDocument d;
        d.id = i;
        d.label = records[i].label;
        d.tokens = {"word" + std::to_string(i % 7), "sentinel" + std::to_string(i)};
        docs.push_back(d);
    }
    docs.push_back({60, "", {}, 0});  // empty document is excluded

    pipeline::PipelineConfig config;
    config.model.kind = pipeline::ModelConfig::Kind::single;
    config.model.single = classifiers::ClassifierSpec::defaults(classifiers::Algorithm::lr);
    std::mutex m;
    std::size_t observed = 0;
    const auto cv = cross_validate(docs, config, 5, 3, [&](const FoldObservation& o) {
        const auto* vocab = o.pipeline.features().vocabulary();
        REQUIRE(vocab != nullptr);
        std::lock_guard lock(m);
        ++observed;
        for (const auto& d : o.test) CHECK_FALSE(vocab->index_of(d.tokens[1]).has_value());
        for (const auto& d : o.train) CHECK(vocab->index_of(d.tokens[1]).has_value());
        CHECK(o.train.size() + o.test.size() == 60);
    });
    CHECK(observed == 5);
    CHECK(cv.excluded_documents == 1);
}

TEST_CASE("durations and tables") {
    CHECK(format_duration(108.0) == "1min 48s");
    CHECK(format_duration(618.0) == "10min 18s");
    CHECK(format_duration(0.42) == "0.42s");

    auto r = report_from_predictions(std::vector<int>{0, 1, 1, 0}, std::vector<int>{0, 1, 0, 0});
    r.feature_kind = "tfidf";
    const auto table = render_class_table(r);
    for (const char* head : {"Model", "Tweets", "Precision", "Recall", "F1-Score", "Classification time"})
        CHECK(table.find(head) != std::string::npos);
    // class 0 row precedes class 1 row
    CHECK(table.find("Stacking  0") != std::string::npos);
    CHECK(table.find("0.67") < table.find("1.00"));

    CvResult cv;
    cv.k = 10;
    cv.fold_accuracies = std::vector<double>(10, 0.9422);
    cv.mean_accuracy = 0.9422;
    const std::vector<CvRow> rows{{"TF-IDF", cv}, {"GloVe", std::nullopt}};
    const auto cv_table = render_cv_table(rows);
    CHECK(cv_table.find("Fold 10") != std::string::npos);
    CHECK(cv_table.find("94.22") != std::string::npos);
    CHECK(cv_table.find("failed") != std::string::npos);

    const auto summary = render_summary_row(r);
    CHECK(summary.find("75%") != std::string::npos);

    const std::vector<ComparisonRow> cmp{{"BoW", r, ""}, {"Word2Vec", std::nullopt, "diverged"}};
    CHECK(render_comparison_table(cmp).find("failed: diverged") != std::string::npos);
}

}  // TEST_SUITE
