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

#include "trollstack_cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "trollstack/error.hpp"

#ifndef TROLLSTACK_DEFAULT_STOPWORDS
#define TROLLSTACK_DEFAULT_STOPWORDS "data/stopwords_en.txt"
#endif

namespace trollstack::cli {

namespace {

namespace fs = std::filesystem;

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

fs::path resolve(const fs::path& p, const fs::path& base) {
    return fs::weakly_canonical(p.is_absolute() ? p : base / p);
}

void require_file(const fs::path& p, const std::string& what) {
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) throw ConfigError(what + " not found: " + p.string());
}

const char* format_name(DatasetFormat f) { return f == DatasetFormat::csv ? "csv" : "cybertroll_json"; }

}  // namespace

fs::path default_stopword_path() {
    if (const char* env = std::getenv("TROLLSTACK_STOPWORDS")) return env;
    return TROLLSTACK_DEFAULT_STOPWORDS;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json ds = {{"path", dataset.path.string()}, {"format", format_name(dataset.format)}};
    if (dataset.format == DatasetFormat::csv)
        ds["csv"] = {{"text_column", dataset.csv.text_column},
                     {"label_column", dataset.csv.label_column},
                     {"label_map", dataset.csv.label_map}};
    if (dataset.max_records) ds["max_records"] = dataset.max_records;
    return {{"dataset", std::move(ds)},
            {"preprocessing", {{"stopword_path", stopword_path.string()}}},
            {"feature", pipeline.feature.to_json()},
            {"model", pipeline.model.to_json()},
            {"evaluation", {{"test_fraction", evaluation.test_fraction}, {"cv_k", evaluation.cv_k}}},
            {"seed", seed},
            {"output_dir", output_dir.string()}};
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j, const fs::path& base_dir) {
    reject_unknown(j, {"dataset", "preprocessing", "feature", "model", "evaluation", "seed", "output_dir"}, "config");
    ExperimentConfig c;
    try {
        if (!j.contains("seed")) throw ConfigError("config.seed is required");
        c.seed = j.at("seed").get<std::uint64_t>();

        const auto& ds = j.at("dataset");
        reject_unknown(ds, {"path", "format", "csv", "max_records"}, "dataset");
        c.dataset.path = resolve(ds.at("path").get<std::string>(), base_dir);
        const std::string format = ds.value("format", std::string("cybertroll_json"));
        if (format == "cybertroll_json") c.dataset.format = DatasetFormat::cybertroll_json;
        else if (format == "csv") c.dataset.format = DatasetFormat::csv;
        else throw ConfigError("dataset.format must be cybertroll_json or csv, got '" + format + "'");
        if (ds.contains("csv")) {
            const auto& csv = ds["csv"];
            reject_unknown(csv, {"text_column", "label_column", "label_map"}, "dataset.csv");
            c.dataset.csv.text_column = csv.value("text_column", c.dataset.csv.text_column);
            c.dataset.csv.label_column = csv.value("label_column", c.dataset.csv.label_column);
            if (csv.contains("label_map")) {
                for (const auto& [name, value] : csv["label_map"].items()) {
                    const int label = value.get<int>();
                    if (label != 0 && label != 1) throw ConfigError("dataset.csv.label_map values must be 0 or 1");
                    c.dataset.csv.label_map[name] = label;
                }
            }
        }
        c.dataset.max_records = ds.value("max_records", std::size_t{0});

        const auto pre = j.value("preprocessing", nlohmann::json::object());
        reject_unknown(pre, {"stopword_path"}, "preprocessing");
        c.stopword_path = pre.contains("stopword_path") ? resolve(pre["stopword_path"].get<std::string>(), base_dir)
                                                        : fs::weakly_canonical(default_stopword_path());

        auto feature = j.at("feature");
        if (feature.contains("pretrained_path") && feature["pretrained_path"].is_string())
            feature["pretrained_path"] = resolve(feature["pretrained_path"].get<std::string>(), base_dir).string();
        c.pipeline.feature = pipeline::FeatureConfig::from_json(feature);
        c.pipeline.model = pipeline::ModelConfig::from_json(j.value("model", nlohmann::json::object()));
        pipeline::apply_seed(c.pipeline, c.seed);

        const auto ev = j.value("evaluation", nlohmann::json::object());
        reject_unknown(ev, {"test_fraction", "cv_k"}, "evaluation");
        c.evaluation.test_fraction = ev.value("test_fraction", c.evaluation.test_fraction);
        c.evaluation.cv_k = ev.value("cv_k", c.evaluation.cv_k);
        if (!(c.evaluation.test_fraction > 0.0 && c.evaluation.test_fraction < 1.0))
            throw ConfigError("evaluation.test_fraction must lie in (0, 1)");
        if (c.evaluation.cv_k == 1) throw ConfigError("evaluation.cv_k must be 0 (off) or >= 2");

        c.output_dir = resolve(j.value("output_dir", std::string("runs")), base_dir);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }

    require_file(c.dataset.path, "dataset");
    require_file(c.stopword_path, "stop-word list");
    if (c.pipeline.feature.pretrained_path) require_file(*c.pipeline.feature.pretrained_path, "pretrained vectors");
    std::error_code ec;
    if (fs::exists(c.output_dir, ec) && !fs::is_directory(c.output_dir, ec))
        throw ConfigError("output_dir exists and is not a directory: " + c.output_dir.string());
    return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_experiment_config(j, fs::absolute(path).parent_path());
}

void override_seed(ExperimentConfig& config, std::uint64_t seed) {
    config.seed = seed;
    pipeline::apply_seed(config.pipeline, seed);
}

}  // namespace trollstack::cli
