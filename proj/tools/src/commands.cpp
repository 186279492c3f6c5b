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

#include "trollstack_cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "staged_directory.hpp"
#include "trollstack/checksum.hpp"
#include "trollstack/error.hpp"

#ifndef TROLLSTACK_VERSION
#define TROLLSTACK_VERSION "0.0.0"
#endif

namespace trollstack::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw DataError(DataErrorCode::io, "cannot write " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(DataErrorCode::io, "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return nlohmann::json::parse(text.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(DataErrorCode::format, path.string() + ": " + e.what());
    }
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
    return buf;
}

nlohmann::json stats_json(const LoadedCorpus& c) {
    return {{"total", c.stats.total},
            {"aggressive", c.stats.aggressive},
            {"non_aggressive", c.stats.non_aggressive},
            {"aggressive_fraction", c.stats.aggressive_fraction()},
            {"empty_after_cleaning", c.empty_after_cleaning}};
}

nlohmann::json dataset_json(const DatasetConfig& ds, const LoadedCorpus& c) {
    return {{"path", ds.path.string()}, {"checksum", c.checksum}, {"stats", stats_json(c)}};
}

nlohmann::json split_json(const corpus::SplitIndices& s, double test_fraction) {
    return {{"seed", s.seed},
            {"test_fraction", test_fraction},
            {"train", s.train_ids.size()},
            {"test", s.test_ids.size()},
            {"excluded", s.excluded_ids.size()}};
}

nlohmann::json base_manifest(const char* command, const ExperimentConfig& config) {
    return {{"schema_version", kManifestSchemaVersion},
            {"kind", "run_manifest"},
            {"command", command},
            {"tool_version", TROLLSTACK_VERSION},
            {"seed", config.seed},
            {"config", config.to_json()}};
}

/// Checksums of report files computed over their timing-free form.
nlohmann::json report_checksums(const nlohmann::json& report) {
    return {{"report.json", fnv1a_hex(strip_volatile(report).dump())}};
}

struct SplitData {
    corpus::SplitIndices split;
    std::vector<corpus::LabeledDocument> train;
    std::vector<corpus::LabeledDocument> test;
};

SplitData make_split(const LoadedCorpus& c, double test_fraction, std::uint64_t seed) {
    SplitData s;
    s.split = corpus::stratified_split(c.docs, test_fraction, seed);
    s.train = corpus::select(c.docs, s.split.train_ids);
    s.test = corpus::select(c.docs, s.split.test_ids);
    return s;
}

/// Fit on the training side, score the test side, record every timing.
evaluation::EvaluationReport run_holdout(const pipeline::PipelineConfig& pconf, const SplitData& s) {
    const auto start = Clock::now();
    pipeline::PipelineTimings timings;
    auto model = pipeline::fit_pipeline(pconf, s.train, &timings);
    const auto X = model.features().transform(s.test);
    auto report = evaluation::evaluate(model, X, corpus::labels_of(s.test));
    report.training_seconds = timings.total_seconds();
    report.total_pipeline_seconds = seconds_since(start);
    report.excluded_documents = s.split.excluded_ids.size();
    report.seed = pconf.seed;
    return report;
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        switch (err->kind()) {
        case ErrorKind::config: return exit_config;
        case ErrorKind::data:
        case ErrorKind::stale_model: return exit_data;
        case ErrorKind::training: return exit_training;
        case ErrorKind::evaluation:
        case ErrorKind::shape: return exit_evaluation;
        }
    }
    return exit_internal;
}

nlohmann::json strip_volatile(const nlohmann::json& j) {
    if (j.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [key, value] : j.items()) {
            if (key == "timings" || key == "created_at") continue;
            out[key] = strip_volatile(value);
        }
        return out;
    }
    if (j.is_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& v : j) out.push_back(strip_volatile(v));
        return out;
    }
    return j;
}

LoadedCorpus load_corpus(const DatasetConfig& dataset, const fs::path& stopword_path) {
    const auto stopwords = corpus::StopWords::load(stopword_path);
    auto records = dataset.format == DatasetFormat::csv ? corpus::load_csv(dataset.path, dataset.csv)
                                                        : corpus::load_cybertroll(dataset.path);
    if (dataset.max_records && records.size() > dataset.max_records) records.resize(dataset.max_records);
    LoadedCorpus c;
    c.checksum = file_checksum(dataset.path);
    c.stats = corpus::corpus_stats(records);
    c.docs = corpus::prepare(records, stopwords);
    for (const auto& d : c.docs) c.empty_after_cleaning += d.tokens.empty() ? 1 : 0;
    return c;
}

StatsResult cmd_stats(const ExperimentConfig& config, std::ostream& out) {
    const auto c = load_corpus(config.dataset, config.stopword_path);
    out << "dataset               " << config.dataset.path.string() << "\n"
        << "total                 " << c.stats.total << "\n"
        << "aggressive (1)        " << c.stats.aggressive << "\n"
        << "non-aggressive (0)    " << c.stats.non_aggressive << "\n"
        << "aggressive fraction   " << percent(c.stats.aggressive_fraction()) << "\n"
        << "empty after cleaning  " << c.empty_after_cleaning << "\n";
    return {c.stats, c.empty_after_cleaning};
}

TrainResult cmd_train(const ExperimentConfig& config, const fs::path& model_dir, std::ostream& out) {
    const auto c = load_corpus(config.dataset, config.stopword_path);
    const auto s = make_split(c, config.evaluation.test_fraction, config.seed);

    pipeline::PipelineTimings timings;
    const auto model = pipeline::fit_pipeline(config.pipeline, s.train, &timings);

    StagedDirectory stage(model_dir);
    auto files = model.save(stage.path());
    fs::copy_file(config.stopword_path, stage.path() / "stopwords.txt", fs::copy_options::overwrite_existing);
    files.emplace_back("stopwords.txt");

    nlohmann::json artifacts = nlohmann::json::object();
    for (const auto& f : files) artifacts[f] = file_checksum(stage.path() / f);

    auto manifest = base_manifest("train", config);
    manifest["dataset"] = dataset_json(config.dataset, c);
    manifest["split"] = split_json(s.split, config.evaluation.test_fraction);
    manifest["model_descriptor"] = model.descriptor();
    manifest["feature_kind"] = to_string(model.features().kind());
    manifest["artifacts"] = std::move(artifacts);
    manifest["timings"] = {{"feature_seconds", timings.feature_seconds},
                           {"model_seconds", timings.model_seconds},
                           {"total_seconds", timings.total_seconds()}};
    manifest["created_at"] = utc_timestamp();
    write_json(stage.path() / "manifest.json", manifest);
    stage.commit();

    out << "trained " << model.descriptor() << " on " << s.train.size() << " documents ("
        << to_string(model.features().kind()) << ", " << model.features().width() << " features) in "
        << evaluation::format_duration(timings.total_seconds()) << "\n"
        << "model written to " << stage.target().string() << "\n";
    return {stage.target(), manifest};
}

evaluation::EvaluationReport cmd_evaluate(const fs::path& model_dir, const std::optional<ExperimentConfig>& config,
                                          const fs::path& out_dir, std::ostream& out) {
    const auto manifest = read_json(model_dir / "manifest.json");
    ExperimentConfig cfg;
    std::uint64_t split_seed = 0;
    double test_fraction = 0.0;
    std::string trained_checksum;
    double training_seconds = 0.0;
    try {
        cfg = config ? *config : parse_experiment_config(manifest.at("config"), model_dir);
        split_seed = manifest.at("split").at("seed").get<std::uint64_t>();
        test_fraction = manifest.at("split").at("test_fraction").get<double>();
        trained_checksum = manifest.at("dataset").at("checksum").get<std::string>();
        training_seconds = manifest.at("timings").at("total_seconds").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(DataErrorCode::format, (model_dir / "manifest.json").string() + ": " + e.what());
    }
    // Clean with the list the model was trained with.
    DatasetConfig dataset = cfg.dataset;
    dataset.max_records = manifest.at("config").at("dataset").value("max_records", std::size_t{0});
    const auto c = load_corpus(dataset, model_dir / "stopwords.txt");
    if (c.checksum != trained_checksum)
        throw StaleModelError("dataset " + dataset.path.string() + " has checksum " + c.checksum +
                              " but the model was trained on " + trained_checksum);

    const auto model = pipeline::Pipeline::load(model_dir);
    const auto s = make_split(c, test_fraction, split_seed);
    const auto start = Clock::now();
    const auto X = model.features().transform(s.test);
    auto report = evaluation::evaluate(model, X, corpus::labels_of(s.test));
    report.training_seconds = training_seconds;
    report.total_pipeline_seconds = training_seconds + seconds_since(start);
    report.excluded_documents = s.split.excluded_ids.size();
    report.seed = split_seed;

    StagedDirectory stage(out_dir);
    const auto report_json = report.to_json();
    write_json(stage.path() / "report.json", report_json);
    const std::string table = evaluation::render_class_table(report) + "\n" + evaluation::render_summary_row(report);
    write_text(stage.path() / "report.txt", table);
    auto m = base_manifest("evaluate", cfg);
    m["seed"] = split_seed;
    m["dataset"] = dataset_json(dataset, c);
    m["split"] = split_json(s.split, test_fraction);
    m["model"] = {{"path", fs::absolute(model_dir).string()},
                  // over the stable fields only, so retraining the same config gives the same value
                  {"manifest_checksum", fnv1a_hex(strip_volatile(manifest).dump())}};
    m["reports"] = report_checksums(report_json);
    m["timings"] = {{"classification_seconds", report.classification_seconds},
                    {"total_pipeline_seconds", *report.total_pipeline_seconds}};
    m["created_at"] = utc_timestamp();
    write_json(stage.path() / "manifest.json", m);
    stage.commit();

    out << table << "report written to " << stage.target().string() << "\n";
    return report;
}

evaluation::CvResult cmd_cv(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& out) {
    if (config.evaluation.cv_k == 0) throw ConfigError("cross-validation is disabled (evaluation.cv_k = 0)");
    const auto c = load_corpus(config.dataset, config.stopword_path);
    const auto start = Clock::now();
    const auto result = evaluation::cross_validate(c.docs, config.pipeline, config.evaluation.cv_k, config.seed);
    const double elapsed = seconds_since(start);

    StagedDirectory stage(out_dir);
    auto report = result.to_json();
    report["feature_kind"] = to_string(config.pipeline.feature.kind);
    report["timings"] = {{"total_seconds", elapsed}};
    write_json(stage.path() / "report.json", report);
    const std::vector<evaluation::CvRow> rows{{to_string(config.pipeline.feature.kind), result}};
    const std::string table = evaluation::render_cv_table(rows);
    write_text(stage.path() / "report.txt", table);
    auto m = base_manifest("cv", config);
    m["dataset"] = dataset_json(config.dataset, c);
    m["reports"] = report_checksums(report);
    m["timings"] = {{"total_seconds", elapsed}};
    m["created_at"] = utc_timestamp();
    write_json(stage.path() / "manifest.json", m);
    stage.commit();

    out << table << "report written to " << stage.target().string() << "\n";
    return result;
}

ComparisonResult cmd_compare_features(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& out) {
    const auto c = load_corpus(config.dataset, config.stopword_path);
    const auto s = make_split(c, config.evaluation.test_fraction, config.seed);
    const FeatureKind kinds[] = {FeatureKind::bow, FeatureKind::tfidf, FeatureKind::word2vec, FeatureKind::glove};

    ComparisonResult result;
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json cv_rows = nlohmann::json::array();
    for (FeatureKind kind : kinds) {
        pipeline::PipelineConfig pconf = config.pipeline;
        pconf.feature.kind = kind;
        if (kind != config.pipeline.feature.kind) pconf.feature.pretrained_path.reset();
        const std::string name = to_string(kind);

        evaluation::ComparisonRow row{name, std::nullopt, ""};
        try {
            row.report = run_holdout(pconf, s);
            rows.push_back({{"feature", name}, {"status", "ok"}, {"report", row.report->to_json()}});
        } catch (const Error& e) {
            row.error = e.what();
            rows.push_back({{"feature", name}, {"status", "failed"}, {"error", row.error}});
        }
        result.rows.push_back(row);

        if (config.evaluation.cv_k >= 2) {
            evaluation::CvRow cv{name, std::nullopt};
            try {
                cv.result = evaluation::cross_validate(c.docs, pconf, config.evaluation.cv_k, config.seed);
                cv_rows.push_back({{"feature", name}, {"status", "ok"}, {"result", cv.result->to_json()}});
            } catch (const Error& e) {
                cv_rows.push_back({{"feature", name}, {"status", "failed"}, {"error", e.what()}});
            }
            result.cv.push_back(cv);
        }
    }

    std::string text = evaluation::render_comparison_table(result.rows);
    for (const auto& r : result.rows)
        if (r.report) text += "\n" + evaluation::render_summary_row(*r.report);
    if (!result.cv.empty()) text += "\n" + evaluation::render_cv_table(result.cv);

    nlohmann::json report = {{"schema_version", evaluation::kSchemaVersion},
                             {"kind", "comparison"},
                             {"seed", config.seed},
                             {"split", split_json(s.split, config.evaluation.test_fraction)},
                             {"rows", rows},
                             {"cv", cv_rows}};
    StagedDirectory stage(out_dir);
    write_json(stage.path() / "report.json", report);
    write_text(stage.path() / "report.txt", text);
    auto m = base_manifest("compare-features", config);
    m["dataset"] = dataset_json(config.dataset, c);
    m["split"] = split_json(s.split, config.evaluation.test_fraction);
    m["reports"] = report_checksums(report);
    nlohmann::json times = nlohmann::json::object();
    for (const auto& r : result.rows)
        if (r.report) times[r.feature] = *r.report->total_pipeline_seconds;
    m["timings"] = {{"total_pipeline_seconds", times}};
    m["created_at"] = utc_timestamp();
    write_json(stage.path() / "manifest.json", m);
    stage.commit();

    out << text << "report written to " << stage.target().string() << "\n";
    return result;
}

PredictResult cmd_predict(const fs::path& model_dir, const std::string& text, std::ostream& out) {
    // the model directory is data: a missing one is a data error, not a config error
    const auto model = pipeline::Pipeline::load(model_dir);
    if (!fs::is_regular_file(model_dir / "stopwords.txt"))
        throw DataError(DataErrorCode::io, "model directory lacks stopwords.txt: " + model_dir.string());
    const auto stopwords = corpus::StopWords::load(model_dir / "stopwords.txt");
    PredictResult r;
    r.tokens = corpus::clean(text, stopwords);
    r.no_signal = r.tokens.empty();
    const std::vector<corpus::TokenSpan> docs{corpus::TokenSpan(r.tokens)};
    r.probability = model.predict_proba(docs).front();
    r.label = classifiers::label_for(r.probability);

    char prob[32];
    std::snprintf(prob, sizeof prob, "%.6f", r.probability);
    out << "label        " << (r.label == 1 ? "aggressive" : "non-aggressive") << "\n"
        << "probability  " << prob << "\n"
        << "no_signal    " << (r.no_signal ? "true" : "false") << "\n";
    return r;
}

}  // namespace trollstack::cli
