/*
 *  Copyright 2026 The paoi Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: run experiment specs, validate them, or optimize a
// single configuration.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "paoi/alternating.hpp"
#include "paoi/error.hpp"
#include "paoi/experiment.hpp"

namespace {

using nlohmann::json;

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("PAOI_OUT_DIR"); env && *env) return env;
    return "results";
}

int cmd_run(const std::string& spec_path, const std::string& out_dir, unsigned jobs,
            std::optional<std::uint64_t> seed) {
    const paoi::ExperimentSpec spec = paoi::load_experiment(spec_path);
    paoi::RunOptions opts;
    opts.jobs = jobs;
    opts.seed_override = seed;
    const paoi::ExperimentOutput out = paoi::run_experiment(spec, opts);
    const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : std::filesystem::path(out_dir);
    for (const auto& path : paoi::write_outputs(spec, out, dir)) std::cout << path.string() << "\n";

    std::size_t failed = 0;
    for (const paoi::ResultRow& row : out.rows)
        if (json::parse(row.params_json).contains("error")) ++failed;
    if (failed) {
        std::cerr << "paoi: " << failed << " of " << out.rows.size()
                  << " rows recorded an error (see params_json)\n";
        return 3;
    }
    return 0;
}

int cmd_validate(const std::string& spec_path) {
    const paoi::ExperimentSpec spec = paoi::load_experiment(spec_path);
    std::cout << spec.to_json().dump(2) << "\n";
    return 0;
}

int cmd_optimize(const std::string& config_path) {
    const json j = paoi::read_json_file(config_path);
    paoi::SystemConfig config;
    try {
        config = paoi::config_from_json(j, "config");
    } catch (const paoi::ConfigError& e) {
        throw paoi::ConfigError(config_path + ": " + e.what());
    }
    const paoi::Model model(config);
    json out{{"config", paoi::config_to_json(config)}};
    if (config.mode == paoi::ServerMode::NonPreemptive) {
        const paoi::NpSolution sol = paoi::solve_np(model);
        out["f"] = sol.f.values();
        out["theta"] = sol.theta.values();
        out["paoi"] = sol.result.total;
        out["iterations"] = sol.trace.iterations;
        out["converged"] = sol.trace.converged;
    } else {
        const paoi::PSolution sol = paoi::solve_p(model);
        out["f"] = sol.f.values();
        out["g_grid"] = sol.g.front().grid();
        json g = json::array();
        for (const paoi::PiecewiseFn& gm : sol.g) g.push_back(gm.values());
        out["g"] = g;
        out["paoi"] = sol.result.total;
        out["iterations"] = sol.trace.iterations;
        out["converged"] = sol.trace.converged;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted peak age of information: optimization and simulation"};
    app.require_subcommand(1);

    std::string spec_path, out_dir, config_path;
    unsigned jobs = 1;
    std::uint64_t seed = 0;

    CLI::App* run = app.add_subcommand("run", "Run an experiment spec and write CSV results");
    run->add_option("spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (default: $PAOI_OUT_DIR or ./results)");
    run->add_option("--jobs", jobs, "Sweep points processed in parallel")->check(CLI::Range(1u, 256u));
    CLI::Option* seed_opt = run->add_option("--seed-override", seed, "Use this seed instead of the spec's seeds");

    CLI::App* validate = app.add_subcommand("validate", "Check a spec and print it in canonical form");
    validate->add_option("spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);

    CLI::App* optimize = app.add_subcommand("optimize", "Print optimal f and thresholds or sampling functions");
    optimize->add_option("config", config_path, "System configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(spec_path, out_dir, jobs,
                           seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (*validate) return cmd_validate(spec_path);
        return cmd_optimize(config_path);
    } catch (const paoi::ConfigError& e) {
        std::cerr << "paoi: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "paoi: " << e.what() << "\n";
        return 1;
    }
}
