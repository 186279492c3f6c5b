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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "trollstack/corpus.hpp"
#include "trollstack/pipeline.hpp"

namespace trollstack::cli {

enum class DatasetFormat { cybertroll_json, csv };

struct DatasetConfig {
    std::filesystem::path path;
    DatasetFormat format = DatasetFormat::cybertroll_json;
    corpus::CsvOptions csv;
    /// Keep only the first N records (0 = all).
    std::size_t max_records = 0;
};

struct EvaluationConfig {
    double test_fraction = 0.2;
    std::size_t cv_k = 10;  // 0 disables cross-validation
};

/// One experiment, fully resolved: every path is absolute and has been checked.
struct ExperimentConfig {
    DatasetConfig dataset;
    std::filesystem::path stopword_path;
    pipeline::PipelineConfig pipeline;
    EvaluationConfig evaluation;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;

    /// Snapshot that parses back to the same config.
    nlohmann::json to_json() const;
};

/// Stop-word list used when the config names none.
std::filesystem::path default_stopword_path();

/// Parses and validates a config document. Relative paths resolve against `base_dir`.
/// Throws ConfigError; never touches the file system beyond existence checks.
ExperimentConfig parse_experiment_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Replaces the master seed and reseeds every component.
void override_seed(ExperimentConfig& config, std::uint64_t seed);

}  // namespace trollstack::cli
