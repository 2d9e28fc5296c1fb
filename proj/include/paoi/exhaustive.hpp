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
#include <vector>

#include "paoi/analytic.hpp"
#include "paoi/system.hpp"

namespace paoi {

// Candidate values for one source's threshold (or constant sampling delay):
// 0, the deciles 0.1 .. 0.9 of C when points = 11, and the search cap
// Q_C(1 - 1e-6). Other sizes space the interior quantiles evenly.
std::vector<double> exhaustive_grid(const Model& model, std::size_t points = 11);

struct ExhaustiveNp {
    FreqVector f;
    ThresholdVector theta;
    double total = 0.0;
};

struct ExhaustiveP {
    FreqVector f;
    std::vector<double> delay;  // constant g^m per source
    double total = 0.0;
};

// Every M-tuple of grid values, each paired with its optimal frequencies;
// returns the smallest weighted peak age (first tuple in lexicographic order
// on ties).
ExhaustiveNp exhaustive_np(const Model& model, const std::vector<double>& grid);
ExhaustiveP exhaustive_p(const Model& model, const std::vector<double>& grid);

}  // namespace paoi
