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

#include <vector>

#include "paoi/system.hpp"

namespace paoi {

// Per-source intermediate terms of the closed-form average peak age.
struct SourceTerms {
    double wait = 0.0;           // mean server wait (non-preemptive), 0 otherwise
    double cycle = 0.0;          // mean inter-generation time attributed to the source
    double truncated = 0.0;      // E[min{C, theta}] or E[min{C, g(T)}]
    double delivery_prob = 1.0;  // probability a packet survives preemption
    double sojourn = 0.0;        // non-preemptive: E[T]+wait+E[C]; preemptive: E[(T+C) 1{delivered}]
    double peak = 0.0;           // mean peak age of the source
};

struct AnalyticResult {
    double total = 0.0;   // weighted sum of per-source mean peaks
    double mean_z = 0.0;  // mean inter-generation time over all packets
    std::vector<SourceTerms> sources;
};

// --- non-preemptive server, random scheduler + fixed thresholds -------------

// E[max{0, C - theta - T}]
double mean_wait_np(const Model& model, double theta);
// E[T] + mean_wait_np + E[min{C, theta}]
double mean_cycle_np(const Model& model, double theta);

// Weighted average peak age:
//   sum_m (w_m / f_m) sum_n f_n Zbar^n + sum_m w_m Wbar^m + E[T] + E[C]
AnalyticResult paoi_np(const Model& model, const FreqVector& f, const ThresholdVector& theta);

// --- preemptive server, random scheduler + transmission-aware sampler --------

// The three expectations of one source's sampling function that enter the
// preemptive formula, computed in a single quadrature pass.
struct SamplerMoments {
    double truncated = 0.0;  // E[min{C, g(T)}]
    double delivery = 0.0;   // P(C <= g(T) + T'), T' an independent copy of T
    double sojourn = 0.0;    // E[(T + C) 1{C <= g(T) + T'}]
};
SamplerMoments sampler_moments(const Model& model, const PiecewiseFn& g);

// E_T[min{C, g(T)}]
double sampled_truncated_mean(const Model& model, const PiecewiseFn& g);
// E[T] + sum_m f_m E[min{C, g^m(T)}]
double mean_Z_p(const Model& model, const FreqVector& f, const SamplingFunctions& g);
// P(C <= g(T) + T'), T' an independent copy of T
double delivery_prob(const Model& model, const PiecewiseFn& g);
// E[(T + C) 1{C <= g(T) + T'}]
double delivered_sojourn(const Model& model, const PiecewiseFn& g);

// Weighted average peak age:
//   sum_m (w_m / P_m) { E[Z] / f_m + E[(T+C) 1{delivered}] }
AnalyticResult paoi_p(const Model& model, const FreqVector& f, const SamplingFunctions& g);
// Same, from moments already computed (one entry per source).
AnalyticResult paoi_p(const Model& model, const FreqVector& f,
                      const std::vector<SamplerMoments>& moments);

}  // namespace paoi
