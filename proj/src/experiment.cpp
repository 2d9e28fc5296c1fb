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

#include "paoi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "paoi/alternating.hpp"
#include "paoi/error.hpp"
#include "paoi/exhaustive.hpp"
#include "paoi/frequency.hpp"
#include "paoi/policy.hpp"
#include "paoi/rng.hpp"
#include "paoi/simulator.hpp"

namespace paoi {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + "." + key + ": missing");
    return *it;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw ConfigError(where + "." + key + ": unknown field");
    }
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + ": expected a string");
    return j.get<std::string>();
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

std::uint64_t as_count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ConfigError(where + ": expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

Distribution as_distribution(const json& j, const std::string& where) {
    const std::string text = as_string(j, where);
    try {
        return Distribution::parse(text);
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

bool valid_name(const std::string& name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
               ch == '_' || ch == '-';
    });
}

const std::set<std::string> kSchedulers{"random", "wrr", "maf"};
const std::set<std::string> kSamplers{"optimized", "zero_wait", "exhaustive"};

}  // namespace

SystemConfig config_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    reject_unknown(j, {"weights", "t_dist", "c_dist", "mode"}, where);
    SystemConfig cfg;
    const json& w = require(j, "weights", where);
    if (!w.is_array() || w.empty()) throw ConfigError(where + ".weights: expected a nonempty array");
    for (std::size_t m = 0; m < w.size(); ++m)
        cfg.weights.push_back(as_number(w[m], where + ".weights[" + std::to_string(m) + "]"));
    cfg.t_dist = as_distribution(require(j, "t_dist", where), where + ".t_dist");
    cfg.c_dist = as_distribution(require(j, "c_dist", where), where + ".c_dist");
    const std::string mode = as_string(require(j, "mode", where), where + ".mode");
    try {
        cfg.mode = parse_server_mode(mode);
    } catch (const ConfigError& e) {
        throw ConfigError(where + ".mode: " + e.what());
    }
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(where + "." + e.what());
    }
    return cfg;
}

json config_to_json(const SystemConfig& config) {
    return json{{"weights", config.weights},
                {"t_dist", config.t_dist.to_string()},
                {"c_dist", config.c_dist.to_string()},
                {"mode", to_string(config.mode)}};
}

json parse_json_text(std::string_view text, const std::string& source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": invalid JSON");
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path.string());
}

ExperimentSpec ExperimentSpec::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("spec: expected an object");
    reject_unknown(j,
                   {"name", "config", "sweep", "policies", "n_packets", "seeds", "warmup_fraction",
                    "exhaustive_points"},
                   "spec");
    ExperimentSpec s;
    s.name = as_string(require(j, "name", "spec"), "spec.name");
    if (!valid_name(s.name))
        throw ConfigError("spec.name: use letters, digits, '_' or '-' only (got \"" + s.name + "\")");
    s.base = config_from_json(require(j, "config", "spec"), "config");

    const json& sweep = require(j, "sweep", "spec");
    reject_unknown(sweep, {"param", "values"}, "sweep");
    s.sweep_param = as_string(require(sweep, "param", "sweep"), "sweep.param");
    if (s.sweep_param != "mean_T" && s.sweep_param != "mean_C")
        throw ConfigError("sweep.param: expected \"mean_T\" or \"mean_C\" (got \"" + s.sweep_param + "\")");
    const json& values = require(sweep, "values", "sweep");
    if (!values.is_array() || values.empty()) throw ConfigError("sweep.values: expected a nonempty array");
    for (std::size_t k = 0; k < values.size(); ++k) {
        const std::string where = "sweep.values[" + std::to_string(k) + "]";
        const double v = as_number(values[k], where);
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(where + ": must be positive");
        s.sweep_values.push_back(v);
    }

    const json& policies = require(j, "policies", "spec");
    if (!policies.is_array() || policies.empty())
        throw ConfigError("policies: expected a nonempty array");
    for (std::size_t k = 0; k < policies.size(); ++k) {
        const std::string where = "policies[" + std::to_string(k) + "]";
        reject_unknown(policies[k], {"scheduler", "sampler"}, where);
        PolicySpec p{as_string(require(policies[k], "scheduler", where), where + ".scheduler"),
                     as_string(require(policies[k], "sampler", where), where + ".sampler")};
        if (!kSchedulers.count(p.scheduler))
            throw ConfigError(where + ".scheduler: expected random, wrr or maf (got \"" + p.scheduler + "\")");
        if (!kSamplers.count(p.sampler))
            throw ConfigError(where + ".sampler: expected optimized, zero_wait or exhaustive (got \"" +
                              p.sampler + "\")");
        if (std::find(s.policies.begin(), s.policies.end(), p) != s.policies.end())
            throw ConfigError(where + ": duplicate policy");
        s.policies.push_back(p);
    }

    if (j.contains("n_packets")) {
        s.n_packets = as_count(j["n_packets"], "spec.n_packets");
        if (s.n_packets == 0) throw ConfigError("spec.n_packets: must be at least 1");
    }
    if (j.contains("seeds")) {
        const json& seeds = j["seeds"];
        if (!seeds.is_array() || seeds.empty()) throw ConfigError("spec.seeds: expected a nonempty array");
        s.seeds.clear();
        for (std::size_t k = 0; k < seeds.size(); ++k)
            s.seeds.push_back(as_count(seeds[k], "spec.seeds[" + std::to_string(k) + "]"));
    }
    if (j.contains("warmup_fraction")) {
        s.warmup_fraction = as_number(j["warmup_fraction"], "spec.warmup_fraction");
        if (!(s.warmup_fraction >= 0.0 && s.warmup_fraction < 1.0))
            throw ConfigError("spec.warmup_fraction: must lie in [0, 1)");
    }
    if (j.contains("exhaustive_points")) {
        s.exhaustive_points = as_count(j["exhaustive_points"], "spec.exhaustive_points");
        if (s.exhaustive_points < 2 || s.exhaustive_points > 21)
            throw ConfigError("spec.exhaustive_points: must lie in [2, 21]");
    }
    for (double v : s.sweep_values) {
        try {
            s.at(v).validate();
        } catch (const ConfigError& e) {
            throw ConfigError("sweep.values: " + format_number(v) + ": " + e.what());
        }
    }
    return s;
}

json ExperimentSpec::to_json() const {
    json policies = json::array();
    for (const PolicySpec& p : this->policies)
        policies.push_back({{"scheduler", p.scheduler}, {"sampler", p.sampler}});
    return json{{"name", name},
                {"config", config_to_json(base)},
                {"sweep", {{"param", sweep_param}, {"values", sweep_values}}},
                {"policies", policies},
                {"n_packets", n_packets},
                {"seeds", seeds},
                {"warmup_fraction", warmup_fraction},
                {"exhaustive_points", exhaustive_points}};
}

SystemConfig ExperimentSpec::at(double value) const {
    SystemConfig cfg = base;
    if (sweep_param == "mean_T")
        cfg.t_dist = cfg.t_dist.with_mean(value);
    else
        cfg.c_dist = cfg.c_dist.with_mean(value);
    return cfg;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        return ExperimentSpec::from_json(j);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

// Everything a sampler choice contributes at one sweep point.
struct SamplerPlan {
    std::optional<std::string> error;
    std::optional<FreqVector> f;  // frequencies the random scheduler uses
    std::optional<SamplerPolicy> policy;
    std::optional<double> analytic;  // under the random scheduler with f
    json params = json::object();
};

json g_to_json(const SamplingFunctions& g) {
    json out = json::array();
    for (const PiecewiseFn& gm : g) out.push_back(gm.values());
    return out;
}

struct PointOutput {
    std::vector<ResultRow> rows;
    std::vector<ThresholdRow> thresholds;
    std::vector<SamplerRow> samplers;
    std::vector<TraceRow> traces;
};

SamplerPlan plan_sampler(const std::string& sampler, const Model& model, const ExperimentSpec& spec,
                         double value, PointOutput& point) {
    SamplerPlan plan;
    const std::size_t M = model.sources();
    const bool np = model.config().mode == ServerMode::NonPreemptive;
    try {
        if (sampler == "optimized") {
            auto add_trace = [&](const OptTrace& trace) {
                for (const TraceEntry& e : trace.entries)
                    point.traces.push_back({value, e.iteration, to_string(e.phase), e.paoi});
                plan.params["iterations"] = trace.iterations;
                plan.params["converged"] = trace.converged;
            };
            if (np) {
                NpSolution sol = solve_np(model);
                plan.f = sol.f;
                plan.policy = FmtSampler{sol.theta};
                plan.analytic = sol.result.total;
                plan.params["theta"] = sol.theta.values();
                for (std::size_t m = 0; m < M; ++m) point.thresholds.push_back({value, m, sol.theta[m]});
                add_trace(sol.trace);
            } else {
                PSolution sol = solve_p(model);
                plan.f = sol.f;
                plan.policy = SmtSampler{sol.g};
                plan.analytic = sol.result.total;
                plan.params["g_grid"] = sol.g.front().grid();
                plan.params["g"] = g_to_json(sol.g);
                plan.params["dinkelbach_iterations"] = sol.dinkelbach_iterations;
                for (std::size_t m = 0; m < M; ++m)
                    for (std::size_t k = 0; k < sol.g[m].grid().size(); ++k)
                        point.samplers.push_back({value, m, sol.g[m].grid()[k], sol.g[m].values()[k]});
                add_trace(sol.trace);
            }
        } else if (sampler == "zero_wait") {
            plan.policy = ZeroWaitSampler{};
            if (np) {
                const ThresholdVector zero = ThresholdVector::zeros(M);
                plan.f = optimal_f_np(model, zero);
                plan.analytic = paoi_np(model, *plan.f, zero).total;
            } else {
                const SamplingFunctions zero(M, PiecewiseFn::constant(0.0));
                plan.f = optimal_f_p(model, zero);
                plan.analytic = paoi_p(model, *plan.f, zero).total;
            }
        } else {
            const std::vector<double> grid = exhaustive_grid(model, spec.exhaustive_points);
            plan.params["grid"] = grid;
            if (np) {
                ExhaustiveNp best = exhaustive_np(model, grid);
                plan.f = best.f;
                plan.policy = FmtSampler{best.theta};
                plan.analytic = best.total;
                plan.params["theta"] = best.theta.values();
            } else {
                ExhaustiveP best = exhaustive_p(model, grid);
                SamplingFunctions g;
                for (double d : best.delay) g.push_back(PiecewiseFn::constant(d));
                plan.f = best.f;
                plan.policy = SmtSampler{std::move(g)};
                plan.analytic = best.total;
                plan.params["delay"] = best.delay;
            }
        }
    } catch (const Error& e) {
        plan.error = e.what();
    }
    return plan;
}

json sim_to_json(const SimResult& r, std::uint64_t sim_seed) {
    json peaks = json::array(), delivered = json::array(), dropped = json::array(),
         freq = json::array(), wait = json::array(), fraction = json::array();
    for (const SourceStats& s : r.sources) {
        peaks.push_back(s.mean_peak);
        delivered.push_back(s.delivered);
        dropped.push_back(s.dropped);
        freq.push_back(s.realized_freq);
        wait.push_back(s.mean_wait);
        fraction.push_back(s.delivery_fraction);
    }
    return json{{"sim_seed", sim_seed},     {"mean_peak", peaks},  {"delivered", delivered},
                {"dropped", dropped},       {"realized_freq", freq}, {"mean_wait", wait},
                {"delivery_fraction", fraction}, {"mean_z", r.mean_z}};
}

// Closed form under the random scheduler with frequencies f. Round robin with
// the same frequencies has the same value, so WRR rows use it too.
double analytic_for(const Model& model, const FreqVector& f, const SamplerPolicy& policy) {
    const std::size_t M = model.sources();
    if (model.config().mode == ServerMode::NonPreemptive) {
        if (const auto* fmt = std::get_if<FmtSampler>(&policy)) return paoi_np(model, f, fmt->theta).total;
        return paoi_np(model, f, ThresholdVector::zeros(M)).total;
    }
    if (const auto* smt = std::get_if<SmtSampler>(&policy)) return paoi_p(model, f, smt->g).total;
    return paoi_p(model, f, SamplingFunctions(M, PiecewiseFn::constant(0.0))).total;
}

PointOutput run_point(const ExperimentSpec& spec, std::size_t index,
                      const std::vector<std::uint64_t>& seeds) {
    const double value = spec.sweep_values[index];
    PointOutput point;
    const SystemConfig cfg = spec.at(value);
    const Model model(cfg);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));

    std::map<std::string, SamplerPlan> plans;
    for (const PolicySpec& p : spec.policies)
        if (!plans.count(p.sampler)) plans.emplace(p.sampler, plan_sampler(p.sampler, model, spec, value, point));

    const FreqVector weights(cfg.weights);
    for (const PolicySpec& p : spec.policies) {
        const SamplerPlan& plan = plans.at(p.sampler);
        json params = plan.params;
        params["config_hash"] = hash;
        std::optional<double> analytic;
        std::optional<SchedulerPolicy> scheduler;
        if (!plan.error) {
            if (p.scheduler == "random") {
                scheduler = RandomScheduler{*plan.f};
                analytic = plan.analytic;
                params["f"] = plan.f->values();
            } else if (p.scheduler == "wrr") {
                WrrScheduler wrr = WrrScheduler::from_frequencies(weights);
                params["f"] = cfg.weights;
                params["wrr_cycle"] = wrr.sequence.size();
                try {
                    analytic = analytic_for(model, wrr.realized(), *plan.policy);
                } catch (const Error&) {
                    // Left empty, e.g. a source that is never delivered.
                }
                scheduler = std::move(wrr);
            } else {
                scheduler = MafScheduler{};
            }
        }
        for (std::uint64_t seed : seeds) {
            ResultRow row{spec.name, spec.sweep_param, value, p.scheduler, p.sampler, seed,
                          analytic,  std::nullopt,     std::nullopt, ""};
            json row_params = params;
            if (plan.error) {
                row_params["error"] = *plan.error;
            } else {
                // Common random numbers: every policy at a sweep point sees
                // the same packet draws for a given seed.
                const std::uint64_t sim_seed = RngStream(seed).split(index).seed();
                SimOptions so;
                so.n_packets = spec.n_packets;
                so.seed = sim_seed;
                so.warmup_fraction = spec.warmup_fraction;
                try {
                    const SimResult r = simulate(cfg, *scheduler, *plan.policy, so);
                    row.paoi_sim = r.total;
                    if (std::isfinite(r.stderr_total)) row.paoi_sim_stderr = r.stderr_total;
                    row_params["sim"] = sim_to_json(r, sim_seed);
                } catch (const Error& e) {
                    row_params["error"] = e.what();
                }
            }
            row.params_json = row_params.dump();
            point.rows.push_back(std::move(row));
        }
    }
    return point;
}

std::string field(double v) { return format_number(v); }
std::string field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec, const RunOptions& opts) {
    std::vector<std::uint64_t> seeds =
        opts.seed_override ? std::vector<std::uint64_t>{*opts.seed_override} : spec.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    const std::size_t points = spec.sweep_values.size();
    std::vector<PointOutput> results(points);

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t k = next++; k < points; k = next++) {
            try {
                results[k] = run_point(spec, k, seeds);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(points)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    // Points are processed in any order; output order is fixed by sweep value,
    // then policy position in the spec, then seed position.
    std::vector<std::size_t> order(points);
    for (std::size_t k = 0; k < points; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return spec.sweep_values[a] < spec.sweep_values[b];
    });
    ExperimentOutput out;
    for (std::size_t k : order) {
        PointOutput& p = results[k];
        std::move(p.rows.begin(), p.rows.end(), std::back_inserter(out.rows));
        std::move(p.thresholds.begin(), p.thresholds.end(), std::back_inserter(out.thresholds));
        std::move(p.samplers.begin(), p.samplers.end(), std::back_inserter(out.samplers));
        std::move(p.traces.begin(), p.traces.end(), std::back_inserter(out.traces));
    }
    return out;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const ResultRow& r : rows) {
        out += r.experiment + "," + r.sweep_param + "," + field(r.sweep_value) + "," + r.scheduler + "," +
               r.sampler + "," + std::to_string(r.seed) + "," + field(r.paoi_analytic) + "," +
               field(r.paoi_sim) + "," + field(r.paoi_sim_stderr) + "," + quoted(r.params_json) + "\n";
    }
    return out;
}

std::string thresholds_csv(const std::string& experiment, const std::vector<ThresholdRow>& rows) {
    std::string out = "experiment,sweep_value,source,theta\n";
    for (const ThresholdRow& r : rows)
        out += experiment + "," + field(r.sweep_value) + "," + std::to_string(r.source + 1) + "," +
               field(r.theta) + "\n";
    return out;
}

std::string samplers_csv(const std::string& experiment, const std::vector<SamplerRow>& rows) {
    std::string out = "experiment,sweep_value,source,t,g\n";
    for (const SamplerRow& r : rows)
        out += experiment + "," + field(r.sweep_value) + "," + std::to_string(r.source + 1) + "," +
               field(r.t) + "," + field(r.g) + "\n";
    return out;
}

std::string traces_csv(const std::string& experiment, const std::vector<TraceRow>& rows) {
    std::string out = "experiment,sweep_value,iteration,phase,paoi\n";
    for (const TraceRow& r : rows)
        out += experiment + "," + field(r.sweep_value) + "," + std::to_string(r.iteration) + "," +
               r.phase + "," + field(r.paoi) + "\n";
    return out;
}

std::vector<std::filesystem::path> write_outputs(const ExperimentSpec& spec, const ExperimentOutput& out,
                                                 const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& suffix, const std::string& text) {
        const std::filesystem::path path = dir / (spec.name + suffix + ".csv");
        write_text(path, text);
        written.push_back(path);
    };
    emit("", to_csv(out.rows));
    if (!out.thresholds.empty()) emit("_thresholds", thresholds_csv(spec.name, out.thresholds));
    if (!out.samplers.empty()) emit("_g", samplers_csv(spec.name, out.samplers));
    if (!out.traces.empty()) emit("_trace", traces_csv(spec.name, out.traces));
    return written;
}

}  // namespace paoi
