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

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/classifiers.hpp"
#include "trollstack/corpus.hpp"
#include "trollstack/embeddings.hpp"
#include "trollstack/ensemble.hpp"
#include "trollstack/feature_matrix.hpp"
#include "trollstack/vectorizers.hpp"

namespace trollstack::pipeline {

struct FeatureConfig {
    FeatureKind kind = FeatureKind::tfidf;
    std::size_t min_df = 1;
    vectorizers::BowMode bow_mode = vectorizers::BowMode::binary;
    embeddings::Word2VecConfig word2vec;
    embeddings::GloveConfig glove;
    /// For word2vec/glove: load this vector file instead of training on the split.
    std::optional<std::filesystem::path> pretrained_path;

    void validate() const;
    nlohmann::json to_json() const;
    static FeatureConfig from_json(const nlohmann::json& j);
};

struct ModelConfig {
    enum class Kind { stacking, single };
    Kind kind = Kind::stacking;
    ensemble::StackingSpec stacking = ensemble::StackingSpec::defaults();
    classifiers::ClassifierSpec single = classifiers::ClassifierSpec::defaults(classifiers::Algorithm::rf);

    void validate() const;
    nlohmann::json to_json() const;
    static ModelConfig from_json(const nlohmann::json& j);
};

struct PipelineConfig {
    FeatureConfig feature;
    ModelConfig model;
    std::uint64_t seed = 0;

    void validate() const;
    nlohmann::json to_json() const;
    static PipelineConfig from_json(const nlohmann::json& j);
};

/// Reseeds every stochastic component from one master seed: stacking bases and meta
/// as in StackingSpec::defaults, a single classifier with `seed` itself, and the
/// embedding trainers with derive_seed(seed, 300).
void apply_seed(PipelineConfig& config, std::uint64_t seed);

/// Vocabulary or embedding table fit on training documents only.
class FeatureExtractor {
public:
    static FeatureExtractor fit(const FeatureConfig& config, std::span<const corpus::TokenSpan> train_docs);

    FeatureMatrix transform(std::span<const corpus::TokenSpan> docs) const;
    FeatureMatrix transform(std::span<const corpus::LabeledDocument> docs) const;

    const FeatureConfig& config() const noexcept { return config_; }
    FeatureKind kind() const noexcept { return config_.kind; }
    std::size_t width() const;
    const vectorizers::Vocabulary* vocabulary() const { return vocabulary_ ? &*vocabulary_ : nullptr; }
    const embeddings::EmbeddingTable* table() const { return table_ ? &*table_ : nullptr; }

    /// Writes features.json plus vocabulary.json or embeddings.txt; returns the file names.
    std::vector<std::string> save(const std::filesystem::path& dir) const;
    static FeatureExtractor load(const std::filesystem::path& dir);

private:
    FeatureConfig config_;
    std::optional<vectorizers::Vocabulary> vocabulary_;
    std::optional<embeddings::EmbeddingTable> table_;
};

struct PipelineTimings {
    double feature_seconds = 0.0;  // vocabulary or embedding fit plus training transform
    double model_seconds = 0.0;
    double total_seconds() const noexcept { return feature_seconds + model_seconds; }
};

/// A fitted extractor plus a stacked or single model.
class Pipeline {
public:
    static constexpr int kFormatVersion = 1;

    Pipeline(FeatureExtractor features, std::unique_ptr<ensemble::StackedModel> stacked);
    Pipeline(FeatureExtractor features, std::unique_ptr<classifiers::TrainedClassifier> single);

    const FeatureExtractor& features() const noexcept { return features_; }
    const ensemble::StackedModel* stacked() const noexcept { return stacked_.get(); }
    const classifiers::TrainedClassifier* single() const noexcept { return single_.get(); }

    /// e.g. "stacking[dt,rf,lsvc,knn,lr->rf]" or "lr".
    std::string descriptor() const;

    std::vector<double> predict_proba(const FeatureMatrix& X) const;
    std::vector<double> predict_proba(std::span<const corpus::TokenSpan> docs) const;

    /// Writes pipeline.json, the feature artifacts and the model files into `dir`.
    /// Returns every file name written.
    std::vector<std::string> save(const std::filesystem::path& dir) const;
    static Pipeline load(const std::filesystem::path& dir);

private:
    FeatureExtractor features_;
    std::unique_ptr<ensemble::StackedModel> stacked_;
    std::unique_ptr<classifiers::TrainedClassifier> single_;
};

Pipeline fit_pipeline(const PipelineConfig& config, std::span<const corpus::LabeledDocument> train_docs,
                      PipelineTimings* timings = nullptr);

}  // namespace trollstack::pipeline
