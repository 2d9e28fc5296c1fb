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

#include <cmath>
#include <cstddef>

namespace paoi {

struct LineSearchOptions {
    std::size_t grid_points = 256;  // coarse grid, endpoints included
    double tolerance = 1e-8;        // final bracket width of the golden-section refinement
    double tie = 1e-10;             // objective differences below this count as ties
};

struct ScalarMin {
    double x;
    double value;
};

// Global-ish minimization of a 1-D function on [lo, hi]: scan a uniform grid,
// then golden-section refine inside the bracket around the best grid point.
// Ties resolve to the smallest x, so flat regions return their left end.
template <class F>
ScalarMin minimize_on_interval(F&& fn, double lo, double hi, const LineSearchOptions& opts = {}) {
    if (!(hi > lo) || opts.grid_points < 2) return {lo, fn(lo)};

    const std::size_t n = opts.grid_points;
    const double step = (hi - lo) / static_cast<double>(n - 1);
    auto grid_x = [&](std::size_t j) { return j + 1 == n ? hi : lo + step * static_cast<double>(j); };

    std::size_t best_j = 0;
    double best = fn(lo);
    for (std::size_t j = 1; j < n; ++j) {
        const double v = fn(grid_x(j));
        if (v < best - opts.tie) {
            best = v;
            best_j = j;
        }
    }

    double a = best_j == 0 ? lo : grid_x(best_j - 1);
    double b = best_j + 1 == n ? hi : grid_x(best_j + 1);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    while (b - a > opts.tolerance) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = fn(x2);
        }
    }
    const double refined_x = f1 <= f2 ? x1 : x2;
    const double refined = f1 <= f2 ? f1 : f2;

    if (refined < best - opts.tie) return {refined_x, refined};
    return {grid_x(best_j), best};
}

}  // namespace paoi
