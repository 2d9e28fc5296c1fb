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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "paoi/system.hpp"

namespace paoi {

// Reads {"weights", "t_dist", "c_dist", "mode"}; `where` prefixes messages.
SystemConfig config_from_json(const nlohmann::json& j, const std::string& where = "config");
nlohmann::json config_to_json(const SystemConfig& config);

// Parses JSON text, reporting syntax errors with line and column.
nlohmann::json parse_json_text(std::string_view text, const std::string& source);
nlohmann::json read_json_file(const std::filesystem::path& path);

struct PolicySpec {
    std::string scheduler;  // random | wrr | maf
    std::string sampler;    // optimized | zero_wait | exhaustive

    friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

struct ExperimentSpec {
    std::string name;
    SystemConfig base;
    std::string sweep_param;  // mean_T | mean_C
    std::vector<double> sweep_values;
    std::vector<PolicySpec> policies;
    std::size_t n_packets = 1'000'000;
    std::vector<std::uint64_t> seeds{1};
    double warmup_fraction = 0.01;
    std::size_t exhaustive_points = 11;

    // Field errors name the offending key, e.g. "sweep.values[2]: must be positive".
    static ExperimentSpec from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;
    // Base configuration with the swept mean set to `value`.
    [[nodiscard]] SystemConfig at(double value) const;
};

ExperimentSpec load_experiment(const std::filesystem::path& path);

// One CSV row. Missing values are written as empty fields.
struct ResultRow {
    std::string experiment;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string scheduler;
    std::string sampler;
    std::uint64_t seed = 0;
    std::optional<double> paoi_analytic;
    std::optional<double> paoi_sim;
    std::optional<double> paoi_sim_stderr;
    std::string params_json;
};

struct ThresholdRow {
    double sweep_value;
    std::size_t source;
    double theta;
};

struct SamplerRow {
    double sweep_value;
    std::size_t source;
    double t;
    double g;
};

struct TraceRow {
    double sweep_value;
    std::size_t iteration;
    std::string phase;
    double paoi;
};

struct ExperimentOutput {
    std::vector<ResultRow> rows;          // sorted by (sweep_value, policy, seed)
    std::vector<ThresholdRow> thresholds; // proposed non-preemptive thresholds
    std::vector<SamplerRow> samplers;     // proposed preemptive sampling functions
    std::vector<TraceRow> traces;         // proposed optimizer traces
};

struct RunOptions {
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed_override;
};

// Runs every (sweep point, policy, seed). Simulation failures are recorded in
// the row's params_json under "error" instead of aborting the sweep.
ExperimentOutput run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "experiment,sweep_param,sweep_value,scheduler,sampler,seed,paoi_analytic,paoi_sim,"
    "paoi_sim_stderr,params_json";

std::string to_csv(const std::vector<ResultRow>& rows);
std::string thresholds_csv(const std::string& experiment, const std::vector<ThresholdRow>& rows);
std::string samplers_csv(const std::string& experiment, const std::vector<SamplerRow>& rows);
std::string traces_csv(const std::string& experiment, const std::vector<TraceRow>& rows);

// Writes <name>.csv plus <name>_thresholds.csv, <name>_g.csv and
// <name>_trace.csv when they have rows. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentSpec& spec, const ExperimentOutput& out,
                                                 const std::filesystem::path& dir);

}  // namespace paoi
