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

#include <optional>
#include <string>
#include <vector>

#include "paoi/analytic.hpp"
#include "paoi/dinkelbach.hpp"
#include "paoi/line_search.hpp"
#include "paoi/system.hpp"

namespace paoi {

enum class Phase { Init, Frequency, Sampler };
std::string to_string(Phase phase);

// One row per half-step, so descent can be checked after every update.
struct TraceEntry {
    std::size_t iteration = 0;
    Phase phase = Phase::Init;
    std::vector<double> f;
    std::vector<double> theta;  // non-preemptive runs
    SamplingFunctions g;        // preemptive runs
    double paoi = 0.0;
};

struct OptTrace {
    std::vector<TraceEntry> entries;
    bool converged = false;
    std::size_t iterations = 0;
    double last_change = 0.0;  // |P_old - P| at exit
};

struct AlternatingOptions {
    double epsilon = 0.0;  // <= 0 selects 1e-6 (E[T] + E[C])
    std::size_t max_iters = 100;
    LineSearchOptions search{};
    DinkelbachOptions dinkelbach{};
};

struct NpSolution {
    FreqVector f;
    ThresholdVector theta;
    AnalyticResult result;
    OptTrace trace;
};

struct PSolution {
    FreqVector f;
    SamplingFunctions g;
    AnalyticResult result;
    OptTrace trace;
    std::size_t dinkelbach_iterations = 0;  // summed over all per-source solves
};

// Alternates f <- optimal_f_np(theta) and theta <- optimize_all_thresholds(f)
// until the weighted peak age changes by at most epsilon. A new threshold
// replaces the incumbent only if it does not worsen its subproblem. On hitting
// max_iters the best parameters so far are returned with trace.converged = false.
NpSolution solve_np(const Model& model, const AlternatingOptions& opts = {},
                    std::optional<FreqVector> f_init = std::nullopt,
                    std::optional<ThresholdVector> theta_init = std::nullopt);

// Preemptive counterpart: f <- optimal_f_p(g), then every source's Dinkelbach
// solve against the same g, keeping the better of the own-term update and a
// coupled, backtracked one (see alternating.cpp). The total never increases.
// g_init defaults to the zero-wait sampler on the Dinkelbach T-grid.
PSolution solve_p(const Model& model, const AlternatingOptions& opts = {},
                  std::optional<FreqVector> f_init = std::nullopt,
                  std::optional<SamplingFunctions> g_init = std::nullopt);

}  // namespace paoi
