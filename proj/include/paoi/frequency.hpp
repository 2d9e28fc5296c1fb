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

#include "paoi/analytic.hpp"
#include "paoi/system.hpp"

namespace paoi {

// Frequency vector minimizing the non-preemptive peak age for fixed thresholds:
//   f_m ∝ sqrt( w_m / (Wbar^m + E[min{C, theta^m}] + E[T]) )
FreqVector optimal_f_np(const Model& model, const ThresholdVector& theta);

// Frequency vector minimizing the preemptive peak age for fixed sampling functions:
//   f_m ∝ sqrt( w_m / (P_m (E[min{C, g^m(T)}] + E[T])) )
FreqVector optimal_f_p(const Model& model, const SamplingFunctions& g);
FreqVector optimal_f_p(const Model& model, const std::vector<SamplerMoments>& moments);

// Normalized f_m ∝ sqrt(weights_m / costs_m). Both optimal_f_* reduce to this;
// it is exposed for evaluators that already hold the per-source costs.
FreqVector sqrt_rule(std::span<const double> weights, std::span<const double> costs);

}  // namespace paoi
