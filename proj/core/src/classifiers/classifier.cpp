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

#include <cmath>
#include <set>

#include "classifiers/fitters.hpp"
#include "trollstack/classifiers.hpp"
#include "trollstack/error.hpp"

namespace trollstack::classifiers {

const char* to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
    case Algorithm::dt: return "dt";
    case Algorithm::rf: return "rf";
    case Algorithm::lsvc: return "lsvc";
    case Algorithm::lr: return "lr";
    case Algorithm::knn: return "knn";
    }
    return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "dt") return Algorithm::dt;
    if (name == "rf") return Algorithm::rf;
    if (name == "lsvc") return Algorithm::lsvc;
    if (name == "lr") return Algorithm::lr;
    if (name == "knn") return Algorithm::knn;
    throw ConfigError("unknown classifier algorithm '" + name + "'");
}

std::size_t MaxFeatures::resolve(std::size_t n_features) const {
    switch (rule) {
    case Rule::all: return 0;
    case Rule::fixed: return count >= n_features ? 0 : count;
    case Rule::sqrt: {
        auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features))));
        return m >= n_features ? 0 : m;
    }
    }
    return 0;
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void reject_unknown_keys(const nlohmann::json& hp, std::initializer_list<const char*> known, Algorithm algorithm) {
    if (!hp.is_object()) throw ConfigError("hyperparameters must be a JSON object");
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : hp.items())
        require(allowed.contains(key),
                std::string("unknown hyperparameter '") + key + "' for " + to_string(algorithm));
}

nlohmann::json max_features_to_json(const MaxFeatures& mf) {
    switch (mf.rule) {
    case MaxFeatures::Rule::sqrt: return "sqrt";
    case MaxFeatures::Rule::all: return "all";
    case MaxFeatures::Rule::fixed: return mf.count;
    }
    return "sqrt";
}

MaxFeatures max_features_from_json(const nlohmann::json& j) {
    MaxFeatures mf;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "sqrt") mf.rule = MaxFeatures::Rule::sqrt;
        else if (s == "all") mf.rule = MaxFeatures::Rule::all;
        else throw ConfigError("max_features must be \"sqrt\", \"all\" or a positive integer");
    } else if (j.is_number_unsigned()) {
        mf.rule = MaxFeatures::Rule::fixed;
        mf.count = j.get<std::size_t>();
    } else {
        throw ConfigError("max_features must be \"sqrt\", \"all\" or a positive integer");
    }
    return mf;
}

template <typename T>
T value_or(const nlohmann::json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("hyperparameter '") + key + "' has the wrong type");
    }
}

}  // namespace

ClassifierSpec ClassifierSpec::defaults(Algorithm algorithm, std::uint64_t seed) {
    ClassifierSpec spec;
    spec.algorithm = algorithm;
    spec.seed = seed;
    switch (algorithm) {
    case Algorithm::dt: spec.hyperparameters = TreeParams{}; break;
    case Algorithm::rf: spec.hyperparameters = ForestParams{}; break;
    case Algorithm::lsvc: spec.hyperparameters = SvcParams{}; break;
    case Algorithm::lr: spec.hyperparameters = LogisticParams{}; break;
    case Algorithm::knn: spec.hyperparameters = KnnParams{}; break;
    }
    return spec;
}

void ClassifierSpec::validate() const {
    auto check_tree = [](const TreeParams& t) {
        require(t.max_depth >= 1, "max_depth must be >= 1");
        require(t.min_samples_split >= 2, "min_samples_split must be >= 2");
    };
    switch (algorithm) {
    case Algorithm::dt: {
        const auto* p = std::get_if<TreeParams>(&hyperparameters);
        require(p != nullptr, "dt expects tree hyperparameters");
        check_tree(*p);
        break;
    }
    case Algorithm::rf: {
        const auto* p = std::get_if<ForestParams>(&hyperparameters);
        require(p != nullptr, "rf expects forest hyperparameters");
        require(p->n_trees >= 1, "n_trees must be >= 1");
        require(p->max_features.rule != MaxFeatures::Rule::fixed || p->max_features.count >= 1,
                "max_features must be >= 1");
        check_tree(p->tree);
        break;
    }
    case Algorithm::lsvc: {
        const auto* p = std::get_if<SvcParams>(&hyperparameters);
        require(p != nullptr, "lsvc expects svc hyperparameters");
        require(p->lambda > 0.0, "lsvc lambda must be > 0");
        require(p->epochs >= 1, "lsvc epochs must be >= 1");
        require(p->intercept_scaling >= 0.0, "intercept_scaling must be >= 0");
        break;
    }
    case Algorithm::lr: {
        const auto* p = std::get_if<LogisticParams>(&hyperparameters);
        require(p != nullptr, "lr expects logistic hyperparameters");
        require(p->lambda >= 0.0, "lr lambda must be >= 0");
        require(p->step > 0.0, "lr step must be > 0");
        require(p->max_epochs >= 1, "lr max_epochs must be >= 1");
        require(p->tolerance > 0.0, "lr tolerance must be > 0");
        break;
    }
    case Algorithm::knn: {
        const auto* p = std::get_if<KnnParams>(&hyperparameters);
        require(p != nullptr, "knn expects knn hyperparameters");
        require(p->k >= 1, "knn k must be >= 1");
        break;
    }
    }
}

nlohmann::json hyperparameters_to_json(const Hyperparameters& hp) {
    struct Visitor {
        nlohmann::json operator()(const TreeParams& p) const {
            return {{"max_depth", p.max_depth}, {"min_samples_split", p.min_samples_split}};
        }
        nlohmann::json operator()(const ForestParams& p) const {
            return {{"n_trees", p.n_trees},
                    {"max_depth", p.tree.max_depth},
                    {"min_samples_split", p.tree.min_samples_split},
                    {"max_features", max_features_to_json(p.max_features)},
                    {"bootstrap", p.bootstrap}};
        }
        nlohmann::json operator()(const SvcParams& p) const {
            return {{"lambda", p.lambda}, {"epochs", p.epochs}, {"intercept_scaling", p.intercept_scaling}};
        }
        nlohmann::json operator()(const LogisticParams& p) const {
            return {{"lambda", p.lambda}, {"step", p.step}, {"max_epochs", p.max_epochs}, {"tolerance", p.tolerance}};
        }
        nlohmann::json operator()(const KnnParams& p) const { return {{"k", p.k}}; }
    };
    return std::visit(Visitor{}, hp);
}

nlohmann::json ClassifierSpec::to_json() const {
    return {{"algorithm", to_string(algorithm)},
            {"hyperparameters", hyperparameters_to_json(hyperparameters)},
            {"seed", seed}};
}

ClassifierSpec ClassifierSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("classifier spec must be a JSON object");
    auto spec = defaults(algorithm_from_string(j.at("algorithm").get<std::string>()), j.value("seed", std::uint64_t{0}));
    const nlohmann::json hp = j.value("hyperparameters", nlohmann::json::object());
    switch (spec.algorithm) {
    case Algorithm::dt: {
        reject_unknown_keys(hp, {"max_depth", "min_samples_split"}, spec.algorithm);
        TreeParams p;
        p.max_depth = value_or(hp, "max_depth", p.max_depth);
        p.min_samples_split = value_or(hp, "min_samples_split", p.min_samples_split);
        spec.hyperparameters = p;
        break;
    }
    case Algorithm::rf: {
        reject_unknown_keys(hp, {"n_trees", "max_depth", "min_samples_split", "max_features", "bootstrap"},
                            spec.algorithm);
        ForestParams p;
        p.n_trees = value_or(hp, "n_trees", p.n_trees);
        p.tree.max_depth = value_or(hp, "max_depth", p.tree.max_depth);
        p.tree.min_samples_split = value_or(hp, "min_samples_split", p.tree.min_samples_split);
        if (hp.contains("max_features")) p.max_features = max_features_from_json(hp.at("max_features"));
        p.bootstrap = value_or(hp, "bootstrap", p.bootstrap);
        spec.hyperparameters = p;
        break;
    }
    case Algorithm::lsvc: {
        reject_unknown_keys(hp, {"lambda", "epochs", "intercept_scaling"}, spec.algorithm);
        SvcParams p;
        p.lambda = value_or(hp, "lambda", p.lambda);
        p.epochs = value_or(hp, "epochs", p.epochs);
        p.intercept_scaling = value_or(hp, "intercept_scaling", p.intercept_scaling);
        spec.hyperparameters = p;
        break;
    }
    case Algorithm::lr: {
        reject_unknown_keys(hp, {"lambda", "step", "max_epochs", "tolerance"}, spec.algorithm);
        LogisticParams p;
        p.lambda = value_or(hp, "lambda", p.lambda);
        p.step = value_or(hp, "step", p.step);
        p.max_epochs = value_or(hp, "max_epochs", p.max_epochs);
        p.tolerance = value_or(hp, "tolerance", p.tolerance);
        spec.hyperparameters = p;
        break;
    }
    case Algorithm::knn: {
        reject_unknown_keys(hp, {"k"}, spec.algorithm);
        KnnParams p;
        p.k = value_or(hp, "k", p.k);
        spec.hyperparameters = p;
        break;
    }
    }
    spec.validate();
    return spec;
}

std::vector<double> TrainedClassifier::predict_proba(const FeatureMatrix& X) const {
    if (X.cols() != n_features_) throw ShapeError(n_features_, X.cols());
    std::vector<double> out(X.rows(), 0.0);
    predict_rows(X, out);
    return out;
}

nlohmann::json TrainedClassifier::to_json() const {
    return {{"format_version", kFormatVersion},
            {"algorithm", to_string(spec_.algorithm)},
            {"hyperparameters", hyperparameters_to_json(spec_.hyperparameters)},
            {"seed", spec_.seed},
            {"n_features", n_features_},
            {"state", state()}};
}

Prediction predict(const TrainedClassifier& model, const FeatureMatrix& X) {
    Prediction p;
    p.probabilities = model.predict_proba(X);
    p.labels.reserve(p.probabilities.size());
    for (double prob : p.probabilities) p.labels.push_back(label_for(prob));
    return p;
}

void check_training_inputs(const FeatureMatrix& X, std::span<const int> y) {
    if (y.size() != X.rows())
        throw ConfigError("label count " + std::to_string(y.size()) + " does not match " +
                          std::to_string(X.rows()) + " feature rows");
    if (y.empty()) throw TrainingError("cannot fit on zero rows");
    for (int label : y)
        if (label != 0 && label != 1) throw ConfigError("labels must be 0 or 1");
}

std::unique_ptr<TrainedClassifier> fit(const ClassifierSpec& spec, const FeatureMatrix& X, std::span<const int> y) {
    spec.validate();
    switch (spec.algorithm) {
    case Algorithm::dt: return std::make_unique<DecisionTree>(detail::fit_decision_tree(spec, X, y));
    case Algorithm::rf: return std::make_unique<RandomForest>(detail::fit_random_forest(spec, X, y));
    case Algorithm::lsvc: return std::make_unique<LinearSvc>(detail::fit_linear_svc(spec, X, y));
    case Algorithm::lr: return std::make_unique<LogisticRegression>(detail::fit_logistic_regression(spec, X, y));
    case Algorithm::knn: return std::make_unique<KNearestNeighbors>(detail::fit_knn(spec, X, y));
    }
    throw ConfigError("unsupported algorithm");
}

std::unique_ptr<TrainedClassifier> load_classifier(const nlohmann::json& envelope) {
    if (envelope.at("format_version").get<int>() != TrainedClassifier::kFormatVersion)
        throw ConfigError("unsupported model format version " + envelope.at("format_version").dump());
    const auto spec = ClassifierSpec::from_json({{"algorithm", envelope.at("algorithm")},
                                                 {"hyperparameters", envelope.at("hyperparameters")},
                                                 {"seed", envelope.at("seed")}});
    const auto n_features = envelope.at("n_features").get<std::size_t>();
    const auto& state = envelope.at("state");
    switch (spec.algorithm) {
    case Algorithm::dt:
        return std::make_unique<DecisionTree>(spec, n_features, Tree::from_json(state.at("tree")));
    case Algorithm::rf: {
        std::vector<Tree> trees;
        for (const auto& t : state.at("trees")) trees.push_back(Tree::from_json(t));
        return std::make_unique<RandomForest>(spec, n_features, std::move(trees));
    }
    case Algorithm::lsvc:
        return std::make_unique<LinearSvc>(spec, state.at("weights").get<std::vector<double>>(),
                                           state.at("bias").get<double>());
    case Algorithm::lr:
        return std::make_unique<LogisticRegression>(spec, state.at("weights").get<std::vector<double>>(),
                                                    state.at("bias").get<double>(),
                                                    state.at("epochs_run").get<std::size_t>());
    case Algorithm::knn:
        return std::make_unique<KNearestNeighbors>(spec, FeatureMatrix::from_json(state.at("matrix")),
                                                   state.at("labels").get<std::vector<int>>());
    }
    throw ConfigError("unsupported algorithm");
}

}  // namespace trollstack::classifiers
