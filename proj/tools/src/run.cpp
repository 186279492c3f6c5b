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

#include <ostream>

#include <CLI11.hpp>

#include "trollstack/error.hpp"
#include "trollstack_cli/commands.hpp"

namespace trollstack::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config;
    std::string model;
    std::string out;
    std::string text;
    std::optional<std::uint64_t> seed;
};

ExperimentConfig load_config(const Options& o) {
    auto config = load_experiment_config(o.config);
    if (o.seed) override_seed(config, *o.seed);
    return config;
}

fs::path out_or(const Options& o, const ExperimentConfig& config, const char* leaf) {
    return o.out.empty() ? config.output_dir / leaf : fs::path(o.out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"trollstack: stacking ensemble for aggressive-tweet detection"};
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", o.seed, "Override the config seed"); };

    auto* stats = app.add_subcommand("stats", "Load, clean and count the dataset");
    stats->add_option("--config", o.config, "Experiment config (JSON)")->required();

    auto* train = app.add_subcommand("train", "Fit features and model on the training split and persist them");
    train->add_option("--config", o.config, "Experiment config (JSON)")->required();
    train->add_option("--model,--out", o.model, "Model directory (default <output_dir>/model)");
    add_seed(train);

    auto* evaluate = app.add_subcommand("evaluate", "Score a persisted model on its held-out split");
    evaluate->add_option("--model", o.model, "Model directory written by train")->required();
    evaluate->add_option("--config", o.config, "Config whose dataset replaces the recorded one");
    evaluate->add_option("--out", o.out, "Report directory (default <output_dir>/evaluation)");

    auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation of the full pipeline");
    cv->add_option("--config", o.config, "Experiment config (JSON)")->required();
    cv->add_option("--out", o.out, "Report directory (default <output_dir>/cv)");
    add_seed(cv);

    auto* compare = app.add_subcommand("compare-features", "Run the pipeline once per feature kind");
    compare->add_option("--config", o.config, "Experiment config (JSON)")->required();
    compare->add_option("--out", o.out, "Report directory (default <output_dir>/compare)");
    add_seed(compare);

    auto* predict = app.add_subcommand("predict", "Classify one text with a persisted model");
    predict->add_option("--model", o.model, "Model directory written by train")->required();
    predict->add_option("--text", o.text, "Text to classify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return exit_config;
    }

    try {
        if (stats->parsed()) {
            cmd_stats(load_config(o), out);
        } else if (train->parsed()) {
            const auto config = load_config(o);
            cmd_train(config, o.model.empty() ? config.output_dir / "model" : fs::path(o.model), out);
        } else if (evaluate->parsed()) {
            std::optional<ExperimentConfig> config;
            if (!o.config.empty()) config = load_config(o);
            const fs::path out_dir = !o.out.empty() ? fs::path(o.out)
                                     : config     ? config->output_dir / "evaluation"
                                                  : fs::path(o.model) / ".." / "evaluation";
            cmd_evaluate(o.model, config, out_dir.lexically_normal(), out);
        } else if (cv->parsed()) {
            const auto config = load_config(o);
            cmd_cv(config, out_or(o, config, "cv"), out);
        } else if (compare->parsed()) {
            const auto config = load_config(o);
            cmd_compare_features(config, out_or(o, config, "compare"), out);
        } else if (predict->parsed()) {
            cmd_predict(o.model, o.text, out);
        }
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        const char* kind = "internal";
        if (const auto* te = dynamic_cast<const Error*>(&e)) kind = to_string(te->kind());
        err << "error (" << kind << "): " << e.what() << "\n";
        return code;
    }
    return exit_ok;
}

}  // namespace trollstack::cli
