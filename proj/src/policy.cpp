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

#include "paoi/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paoi/error.hpp"

namespace paoi {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Per-source slot counts for a cycle of length k, by largest remainder.
std::vector<std::size_t> apportion(const std::vector<double>& f, std::size_t k) {
    const std::size_t M = f.size();
    std::vector<std::size_t> counts(M);
    std::vector<double> rem(M);
    std::size_t used = 0;
    for (std::size_t m = 0; m < M; ++m) {
        const double exact = f[m] * static_cast<double>(k);
        counts[m] = static_cast<std::size_t>(std::floor(exact));
        rem[m] = exact - static_cast<double>(counts[m]);
        used += counts[m];
    }
    std::vector<std::size_t> order(M);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t j = 0; used < k; ++j, ++used) ++counts[order[j % M]];
    return counts;
}

}  // namespace

WrrScheduler WrrScheduler::from_frequencies(const FreqVector& f, std::size_t max_cycle) {
    if (max_cycle == 0) throw PolicyError("wrr: max_cycle must be positive");
    const std::vector<double>& share = f.values();
    std::size_t k = max_cycle;
    for (std::size_t cand = 1; cand <= max_cycle; ++cand) {
        bool integral = true;
        for (double x : share) {
            const double v = x * static_cast<double>(cand);
            if (std::abs(v - std::round(v)) > 1e-9 * static_cast<double>(cand)) {
                integral = false;
                break;
            }
        }
        if (integral) {
            k = cand;
            break;
        }
    }
    const std::vector<std::size_t> counts = apportion(share, k);

    // Smooth weighted round-robin: every slot adds the counts to a running
    // credit and serves the largest credit, which spreads each source evenly.
    const std::size_t M = counts.size();
    std::vector<long long> credit(M, 0);
    WrrScheduler out;
    out.sequence.reserve(k);
    for (std::size_t slot = 0; slot < k; ++slot) {
        std::size_t best = M;
        for (std::size_t m = 0; m < M; ++m) {
            if (counts[m] == 0) continue;
            credit[m] += static_cast<long long>(counts[m]);
            if (best == M || credit[m] > credit[best]) best = m;
        }
        credit[best] -= static_cast<long long>(k);
        out.sequence.push_back(best);
    }
    return out;
}

FreqVector WrrScheduler::realized() const {
    if (sequence.empty()) throw PolicyError("wrr: empty sequence");
    const std::size_t M = *std::max_element(sequence.begin(), sequence.end()) + 1;
    std::vector<double> counts(M, 0.0);
    for (std::size_t m : sequence) counts[m] += 1.0;
    for (double& c : counts) c /= static_cast<double>(sequence.size());
    return FreqVector(std::move(counts));
}

std::string describe(const SchedulerPolicy& policy) {
    return std::visit(overloaded{[](const RandomScheduler&) { return std::string("random"); },
                                 [](const WrrScheduler&) { return std::string("wrr"); },
                                 [](const MafScheduler&) { return std::string("maf"); }},
                      policy);
}

std::string describe(const SamplerPolicy& policy) {
    return std::visit(overloaded{[](const ZeroWaitSampler&) { return std::string("zero_wait"); },
                                 [](const FmtSampler&) { return std::string("fmt"); },
                                 [](const SmtSampler&) { return std::string("smt"); }},
                      policy);
}

void check_compatible(const SystemConfig& config, const SchedulerPolicy& scheduler,
                      const SamplerPolicy& sampler) {
    const std::size_t M = config.sources();
    if (const auto* r = std::get_if<RandomScheduler>(&scheduler); r && r->f.size() != M)
        throw PolicyError("random scheduler: f has " + std::to_string(r->f.size()) +
                          " entries for " + std::to_string(M) + " sources");
    if (const auto* w = std::get_if<WrrScheduler>(&scheduler)) {
        if (w->sequence.empty()) throw PolicyError("wrr scheduler: empty sequence");
        for (std::size_t m : w->sequence)
            if (m >= M) throw PolicyError("wrr scheduler: source index out of range");
    }
    if (const auto* fmt = std::get_if<FmtSampler>(&sampler)) {
        if (config.mode != ServerMode::NonPreemptive)
            throw PolicyError("fmt sampler requires a non_preemptive server");
        if (fmt->theta.size() != M) throw PolicyError("fmt sampler: one threshold per source required");
    }
    if (const auto* smt = std::get_if<SmtSampler>(&sampler)) {
        if (config.mode != ServerMode::Preemptive)
            throw PolicyError("smt sampler requires a preemptive server");
        if (smt->g.size() != M) throw PolicyError("smt sampler: one function per source required");
    }
}

}  // namespace paoi
