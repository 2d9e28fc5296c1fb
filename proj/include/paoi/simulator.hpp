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
#include <cstdint>
#include <vector>

#include "paoi/policy.hpp"
#include "paoi/system.hpp"

namespace paoi {

struct SimOptions {
    std::size_t n_packets = 1'000'000;  // generated packets, excluding the initial one
    std::uint64_t seed = 1;
    double warmup_fraction = 0.01;      // share of each source's deliveries discarded
    std::size_t min_deliveries = 100;   // per source, after warmup
    std::size_t batches = 32;           // batch means for the standard error
    bool record_trace = false;
};

// One generated packet. `delivered` is false for packets discarded by
// preemption; `delivery` is then meaningless.
struct PacketRecord {
    std::size_t source = 0;
    double generated = 0.0;
    double transmission = 0.0;
    double wait = 0.0;
    double computation = 0.0;
    double delivery = 0.0;
    bool delivered = false;

    friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

struct SourceStats {
    double mean_peak = 0.0;       // after warmup
    std::size_t delivered = 0;    // all deliveries, warmup included
    std::size_t dropped = 0;
    std::size_t generated = 0;
    double realized_freq = 0.0;   // generated / n_packets
    double mean_wait = 0.0;       // over the source's packets
    double delivery_fraction = 0.0;
};

struct SimResult {
    double total = 0.0;   // sum_m w_m * mean_peak_m
    double stderr_total = 0.0;
    double mean_z = 0.0;  // mean inter-generation time
    std::vector<SourceStats> sources;
    std::vector<PacketRecord> trace;  // filled when SimOptions::record_trace
};

// Event-driven run of the pipeline under `scheduler` and `sampler`.
//
// Packet i is generated at s_i, reaches the server at s_i + T_i and computes
// for C_i. Non-preemptive: it waits for the previous computation, and the
// next packet is generated min{C_i, theta^{m_{i+1}}} after service starts,
// with m_{i+1} chosen at that instant. Preemptive: service starts on arrival,
// the next packet is generated min{C_i, g^{m_i}(T_i)} after it and discards
// packet i if that computation is still running.
//
// An initial packet is generated at -(T_0 + C_0) and delivered at time 0 for
// every source. Throws PolicyError for incompatible policies and
// InsufficientDeliveries when a source ends with fewer than min_deliveries
// peaks after warmup.
SimResult simulate(const SystemConfig& config, const SchedulerPolicy& scheduler,
                   const SamplerPolicy& sampler, const SimOptions& opts = {});

}  // namespace paoi
