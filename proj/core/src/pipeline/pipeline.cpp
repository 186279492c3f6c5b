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

#include "trollstack/pipeline.hpp"

#include <chrono>
#include <set>

#include "json_io.hpp"
#include "trollstack/error.hpp"
#include "trollstack/random.hpp"

namespace trollstack::pipeline {

namespace {

using classifiers::Algorithm;
using classifiers::ClassifierSpec;

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

ClassifierSpec spec_from_hyperparameters(Algorithm algorithm, const nlohmann::json& hp) {
    return ClassifierSpec::from_json({{"algorithm", classifiers::to_string(algorithm)}, {"hyperparameters", hp}});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* bow_mode_name(vectorizers::BowMode mode) {
    return mode == vectorizers::BowMode::binary ? "binary" : "counts";
}

}  // namespace

// --- configuration -------------------------------------------------------------

void FeatureConfig::validate() const {
    if (kind == FeatureKind::meta) throw ConfigError("feature.kind must be one of bow, tfidf, word2vec, glove");
    if (min_df < 1) throw ConfigError("feature.min_df must be >= 1");
    if (pretrained_path && kind != FeatureKind::word2vec && kind != FeatureKind::glove)
        throw ConfigError("feature.pretrained_path only applies to word2vec or glove");
    word2vec.validate();
    glove.validate();
}

nlohmann::json FeatureConfig::to_json() const {
    nlohmann::json j = {{"kind", to_string(kind)},
                        {"min_df", min_df},
                        {"bow_mode", bow_mode_name(bow_mode)},
                        {"word2vec", word2vec.to_json()},
                        {"glove", glove.to_json()}};
    j["pretrained_path"] = pretrained_path ? nlohmann::json(pretrained_path->string()) : nlohmann::json(nullptr);
    return j;
}

FeatureConfig FeatureConfig::from_json(const nlohmann::json& j) {
    reject_unknown(j, {"kind", "min_df", "bow_mode", "word2vec", "glove", "pretrained_path"}, "feature");
    FeatureConfig c;
    try {
        c.kind = feature_kind_from_string(j.at("kind").get<std::string>());
        c.min_df = j.value("min_df", c.min_df);
        const std::string mode = j.value("bow_mode", std::string("binary"));
        if (mode == "binary") c.bow_mode = vectorizers::BowMode::binary;
        else if (mode == "counts") c.bow_mode = vectorizers::BowMode::counts;
        else throw ConfigError("feature.bow_mode must be binary or counts");
        if (j.contains("word2vec")) c.word2vec = embeddings::Word2VecConfig::from_json(j["word2vec"]);
        if (j.contains("glove")) c.glove = embeddings::GloveConfig::from_json(j["glove"]);
        if (j.contains("pretrained_path") && !j["pretrained_path"].is_null())
            c.pretrained_path = j["pretrained_path"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid feature config: ") + e.what());
    }
    c.validate();
    return c;
}

void ModelConfig::validate() const {
    if (kind == Kind::stacking) stacking.validate();
    else single.validate();
}

nlohmann::json ModelConfig::to_json() const {
    if (kind == Kind::single)
        return {{"type", "single"},
                {"algorithm", classifiers::to_string(single.algorithm)},
                {"hyperparameters", classifiers::hyperparameters_to_json(single.hyperparameters)}};
    nlohmann::json base = nlohmann::json::object();
    for (const auto& s : stacking.base_specs)
        base[classifiers::to_string(s.algorithm)] = classifiers::hyperparameters_to_json(s.hyperparameters);
    return {{"type", "stacking"},
            {"oof_folds", stacking.oof_folds},
            {"base", std::move(base)},
            {"meta", classifiers::hyperparameters_to_json(stacking.meta_spec.hyperparameters)}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
    ModelConfig c;
    try {
        const std::string type = j.value("type", std::string("stacking"));
        if (type == "single") {
            reject_unknown(j, {"type", "algorithm", "hyperparameters"}, "model");
            c.kind = Kind::single;
            c.single = spec_from_hyperparameters(classifiers::algorithm_from_string(j.at("algorithm").get<std::string>()),
                                                 j.value("hyperparameters", nlohmann::json::object()));
        } else if (type == "stacking") {
            reject_unknown(j, {"type", "oof_folds", "base", "meta"}, "model");
            c.kind = Kind::stacking;
            c.stacking.oof_folds = j.value("oof_folds", c.stacking.oof_folds);
            if (j.contains("base")) {
                const auto& base = j["base"];
                if (!base.is_object()) throw ConfigError("model.base must be an object");
                for (const auto& [name, hp] : base.items()) {
                    const Algorithm algorithm = classifiers::algorithm_from_string(name);
                    for (auto& s : c.stacking.base_specs)
                        if (s.algorithm == algorithm) s = spec_from_hyperparameters(algorithm, hp);
                }
            }
            if (j.contains("meta")) c.stacking.meta_spec = spec_from_hyperparameters(Algorithm::rf, j["meta"]);
        } else {
            throw ConfigError("model.type must be stacking or single, got '" + type + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid model config: ") + e.what());
    }
    c.validate();
    return c;
}

void PipelineConfig::validate() const {
    feature.validate();
    model.validate();
}

nlohmann::json PipelineConfig::to_json() const {
    return {{"feature", feature.to_json()}, {"model", model.to_json()}, {"seed", seed}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    reject_unknown(j, {"feature", "model", "seed"}, "pipeline");
    PipelineConfig c;
    c.feature = FeatureConfig::from_json(j.at("feature"));
    c.model = ModelConfig::from_json(j.value("model", nlohmann::json::object()));
    try {
        apply_seed(c, j.at("seed").get<std::uint64_t>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("pipeline seed: ") + e.what());
    }
    return c;
}

void apply_seed(PipelineConfig& config, std::uint64_t seed) {
    config.seed = seed;
    auto& st = config.model.stacking;
    st.seed = seed;
    for (std::size_t j = 0; j < st.base_specs.size(); ++j) st.base_specs[j].seed = derive_seed(seed, j + 1);
    st.meta_spec.seed = derive_seed(seed, 100);
    config.model.single.seed = seed;
    config.feature.word2vec.seed = derive_seed(seed, 300);
    config.feature.glove.seed = derive_seed(seed, 300);
}

// --- features ----------------------------------------------------------------

FeatureExtractor FeatureExtractor::fit(const FeatureConfig& config, std::span<const corpus::TokenSpan> train_docs) {
    config.validate();
    FeatureExtractor fx;
    fx.config_ = config;
    switch (config.kind) {
    case FeatureKind::bow:
    case FeatureKind::tfidf:
        fx.vocabulary_ = vectorizers::fit_vocabulary(train_docs, config.min_df);
        break;
    case FeatureKind::word2vec:
        fx.table_ = config.pretrained_path ? embeddings::load_pretrained(*config.pretrained_path)
                                           : embeddings::train_word2vec(train_docs, config.word2vec);
        break;
    case FeatureKind::glove:
        fx.table_ = config.pretrained_path ? embeddings::load_pretrained(*config.pretrained_path)
                                           : embeddings::train_glove(train_docs, config.glove);
        break;
    case FeatureKind::meta:
        throw ConfigError("meta features cannot be extracted from text");
    }
    return fx;
}

FeatureMatrix FeatureExtractor::transform(std::span<const corpus::TokenSpan> docs) const {
    switch (config_.kind) {
    case FeatureKind::bow: return vectorizers::bow_transform(docs, *vocabulary_, config_.bow_mode);
    case FeatureKind::tfidf: return vectorizers::tfidf_transform(docs, *vocabulary_);
    case FeatureKind::word2vec:
    case FeatureKind::glove: return embeddings::embed_corpus(docs, *table_, config_.kind);
    case FeatureKind::meta: break;
    }
    throw ConfigError("meta features cannot be extracted from text");
}

FeatureMatrix FeatureExtractor::transform(std::span<const corpus::LabeledDocument> docs) const {
    const auto views = corpus::token_views(docs);
    return transform(views);
}

std::size_t FeatureExtractor::width() const { return vocabulary_ ? vocabulary_->size() : table_->dim(); }

std::vector<std::string> FeatureExtractor::save(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError(DataErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
    std::vector<std::string> files{"features.json"};
    if (vocabulary_) {
        detail::write_json_file(dir / "vocabulary.json", vocabulary_->to_json());
        files.emplace_back("vocabulary.json");
    } else {
        table_->save(dir / "embeddings.txt");
        files.emplace_back("embeddings.txt");
        files.emplace_back("embeddings.txt.meta.json");
    }
    detail::write_json_file(dir / "features.json",
                            {{"format_version", 1}, {"config", config_.to_json()}, {"files", files}});
    return files;
}

FeatureExtractor FeatureExtractor::load(const std::filesystem::path& dir) {
    const auto j = detail::read_json_file(dir / "features.json");
    FeatureExtractor fx;
    try {
        fx.config_ = FeatureConfig::from_json(j.at("config"));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, (dir / "features.json").string() + ": " + e.what());
    }
    if (fx.config_.kind == FeatureKind::bow || fx.config_.kind == FeatureKind::tfidf)
        fx.vocabulary_ = vectorizers::Vocabulary::from_json(detail::read_json_file(dir / "vocabulary.json"));
    else
        fx.table_ = embeddings::EmbeddingTable::load(dir / "embeddings.txt");
    return fx;
}

// --- pipeline ----------------------------------------------------------------

Pipeline::Pipeline(FeatureExtractor features, std::unique_ptr<ensemble::StackedModel> stacked)
    : features_(std::move(features)), stacked_(std::move(stacked)) {
    if (!stacked_) throw ConfigError("pipeline needs a model");
    if (stacked_->n_features() != features_.width()) throw ShapeError(features_.width(), stacked_->n_features());
}

Pipeline::Pipeline(FeatureExtractor features, std::unique_ptr<classifiers::TrainedClassifier> single)
    : features_(std::move(features)), single_(std::move(single)) {
    if (!single_) throw ConfigError("pipeline needs a model");
    if (single_->n_features() != features_.width()) throw ShapeError(features_.width(), single_->n_features());
}

std::string Pipeline::descriptor() const {
    if (single_) return classifiers::to_string(single_->spec().algorithm);
    std::string out = "stacking[";
    for (std::size_t j = 0; j < stacked_->n_bases(); ++j) {
        if (j) out += ",";
        out += classifiers::to_string(stacked_->base(j).spec().algorithm);
    }
    return out + "->" + classifiers::to_string(stacked_->meta().spec().algorithm) + "]";
}

std::vector<double> Pipeline::predict_proba(const FeatureMatrix& X) const {
    return stacked_ ? stacked_->predict_proba(X) : single_->predict_proba(X);
}

std::vector<double> Pipeline::predict_proba(std::span<const corpus::TokenSpan> docs) const {
    return predict_proba(features_.transform(docs));
}

std::vector<std::string> Pipeline::save(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError(DataErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
    auto files = features_.save(dir);
    if (stacked_) {
        stacked_->save(dir, {{"features", files}});
        for (std::size_t j = 0; j < stacked_->n_bases(); ++j)
            files.push_back("base_" + std::to_string(j) + "_" +
                            classifiers::to_string(stacked_->base(j).spec().algorithm) + ".json");
        files.emplace_back("meta.json");
        files.emplace_back("stacking.json");
    } else {
        detail::write_json_file(dir / "model.json", single_->to_json());
        files.emplace_back("model.json");
    }
    detail::write_json_file(dir / "pipeline.json", {{"format_version", kFormatVersion},
                                                    {"model_kind", stacked_ ? "stacking" : "single"},
                                                    {"feature_kind", to_string(features_.kind())},
                                                    {"descriptor", descriptor()}});
    files.emplace_back("pipeline.json");
    return files;
}

Pipeline Pipeline::load(const std::filesystem::path& dir) {
    const auto j = detail::read_json_file(dir / "pipeline.json");
    std::string kind;
    try {
        if (j.at("format_version").get<int>() != kFormatVersion)
            throw DataError(DataErrorCode::format, "unsupported pipeline format_version in " + dir.string());
        kind = j.at("model_kind").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, (dir / "pipeline.json").string() + ": " + e.what());
    }
    auto features = FeatureExtractor::load(dir);
    if (kind == "stacking")
        return Pipeline(std::move(features), std::make_unique<ensemble::StackedModel>(ensemble::StackedModel::load(dir)));
    if (kind == "single")
        return Pipeline(std::move(features), classifiers::load_classifier(detail::read_json_file(dir / "model.json")));
    throw DataError(DataErrorCode::format, "unknown model_kind '" + kind + "' in " + dir.string());
}

Pipeline fit_pipeline(const PipelineConfig& config, std::span<const corpus::LabeledDocument> train_docs,
                      PipelineTimings* timings) {
    config.validate();
    const auto views = corpus::token_views(train_docs);
    const auto y = corpus::labels_of(train_docs);

    const auto feature_start = std::chrono::steady_clock::now();
    auto features = FeatureExtractor::fit(config.feature, views);
    const FeatureMatrix X = features.transform(views);
    const double feature_seconds = seconds_since(feature_start);

    const auto model_start = std::chrono::steady_clock::now();
    std::optional<Pipeline> fitted;
    if (config.model.kind == ModelConfig::Kind::stacking)
        fitted.emplace(std::move(features),
                       std::make_unique<ensemble::StackedModel>(ensemble::fit_stacking(X, y, config.model.stacking)));
    else
        fitted.emplace(std::move(features), classifiers::fit(config.model.single, X, y));
    if (timings) {
        timings->feature_seconds = feature_seconds;
        timings->model_seconds = seconds_since(model_start);
    }
    return std::move(*fitted);
}

}  // namespace trollstack::pipeline
