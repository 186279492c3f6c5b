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
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trollstack/corpus.hpp"
#include "trollstack/evaluation.hpp"
#include "trollstack/pipeline.hpp"
#include "trollstack_cli/config.hpp"

namespace trollstack::cli {

inline constexpr int kManifestSchemaVersion = 1;

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_data = 3,
    exit_training = 4,
    exit_evaluation = 5,
};

int exit_code_for(const std::exception& e) noexcept;

struct LoadedCorpus {
    std::vector<corpus::LabeledDocument> docs;
    corpus::CorpusStats stats;
    std::size_t empty_after_cleaning = 0;
    std::string checksum;  // of the dataset file
};

LoadedCorpus load_corpus(const DatasetConfig& dataset, const std::filesystem::path& stopword_path);

struct StatsResult {
    corpus::CorpusStats stats;
    std::size_t empty_after_cleaning = 0;
};
StatsResult cmd_stats(const ExperimentConfig& config, std::ostream& out);

struct TrainResult {
    std::filesystem::path model_dir;
    nlohmann::json manifest;
};
/// Split, fit features and model on the training side, persist everything to model_dir.
TrainResult cmd_train(const ExperimentConfig& config, const std::filesystem::path& model_dir, std::ostream& out);

/// Re-derives the held-out split from the model manifest and scores it. `config`
/// replaces the dataset location recorded in the manifest when given.
evaluation::EvaluationReport cmd_evaluate(const std::filesystem::path& model_dir,
                                          const std::optional<ExperimentConfig>& config,
                                          const std::filesystem::path& out_dir, std::ostream& out);

evaluation::CvResult cmd_cv(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& out);

struct ComparisonResult {
    std::vector<evaluation::ComparisonRow> rows;
    std::vector<evaluation::CvRow> cv;
};
/// Full pipeline once per feature kind on one shared split; failures are recorded per row.
ComparisonResult cmd_compare_features(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                      std::ostream& out);

struct PredictResult {
    int label = 0;
    double probability = 0.0;
    bool no_signal = false;  // text cleaned to zero tokens
    std::vector<std::string> tokens;
};
PredictResult cmd_predict(const std::filesystem::path& model_dir, const std::string& text, std::ostream& out);

/// Copy of a JSON document without timing and timestamp fields, for determinism checks.
nlohmann::json strip_volatile(const nlohmann::json& j);

/// Parses arguments, runs one command and returns its exit code. Errors go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trollstack::cli
