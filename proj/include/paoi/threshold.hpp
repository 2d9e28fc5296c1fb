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

#include "paoi/line_search.hpp"
#include "paoi/system.hpp"

namespace paoi {

// Per-source threshold subproblem of the non-preemptive system (frequencies fixed):
//   w_m Wbar^m + f_m [Wbar^m + E[min{C, theta}]] * sum_n w_n / f_n
// Summed over m and added to (1 + sum_n w_n/f_n) E[T] + E[C], it reproduces the
// weighted average peak age exactly.
double threshold_objective(const Model& model, const FreqVector& f, std::size_t m, double theta);

// Search range upper end: the (1 - 1e-6) quantile of C. Beyond it the
// objective is flat up to the ignored tail mass.
double threshold_search_limit(const Model& model);

// Minimizes threshold_objective over [0, threshold_search_limit]. Returns
// theta = 0 when the boundary wins (zero-wait sampling for this source).
ScalarMin optimize_threshold(const Model& model, const FreqVector& f, std::size_t m,
                             const LineSearchOptions& opts = {});

// The subproblems are independent, so each source is optimized on its own.
ThresholdVector optimize_all_thresholds(const Model& model, const FreqVector& f,
                                        const LineSearchOptions& opts = {});

}  // namespace paoi
