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

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "paoi/system.hpp"

namespace paoi {

// --- schedulers --------------------------------------------------------------

// Draws the next source i.i.d. from f.
struct RandomScheduler {
    FreqVector f;
};

// Cycles through a fixed sequence of source indices.
struct WrrScheduler {
    std::vector<std::size_t> sequence;

    // Sequence realizing `f` with exact per-cycle counts. The cycle length K
    // is the smallest integer up to max_cycle making every f_m K integral;
    // otherwise K = max_cycle with largest-remainder rounding. Slots are
    // interleaved by smooth weighted round-robin.
    static WrrScheduler from_frequencies(const FreqVector& f, std::size_t max_cycle = 10000);
    [[nodiscard]] FreqVector realized() const;
};

// Picks the source with the largest age at the destination, lowest index on ties.
struct MafScheduler {};

using SchedulerPolicy = std::variant<RandomScheduler, WrrScheduler, MafScheduler>;

// --- samplers ----------------------------------------------------------------

struct ZeroWaitSampler {};

// Non-preemptive: Z_i = T_i + W_i + min{C_i, theta^{m_{i+1}}}.
struct FmtSampler {
    ThresholdVector theta;
};

// Preemptive: Z_i = T_i + min{C_i, g^{m_i}(T_i)}.
struct SmtSampler {
    SamplingFunctions g;
};

using SamplerPolicy = std::variant<ZeroWaitSampler, FmtSampler, SmtSampler>;

std::string describe(const SchedulerPolicy& policy);  // "random", "wrr", "maf"
std::string describe(const SamplerPolicy& policy);    // "zero_wait", "fmt", "smt"

// Throws PolicyError when a policy does not fit the configuration: wrong
// number of sources, FMT on a preemptive server or SMT on a non-preemptive one.
void check_compatible(const SystemConfig& config, const SchedulerPolicy& scheduler,
                      const SamplerPolicy& sampler);

}  // namespace paoi
