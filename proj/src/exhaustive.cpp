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

#include "paoi/exhaustive.hpp"

#include <cmath>
#include <limits>

#include "paoi/error.hpp"
#include "paoi/frequency.hpp"
#include "paoi/threshold.hpp"

namespace paoi {
namespace {

// Calls visit(index tuple) for every tuple in [0, n)^M, last index fastest.
template <class F>
void for_each_tuple(std::size_t M, std::size_t n, F&& visit) {
    std::vector<std::size_t> idx(M, 0);
    while (true) {
        visit(idx);
        std::size_t k = M;
        while (k > 0 && ++idx[k - 1] == n) idx[--k] = 0;
        if (k == 0) return;
    }
}

void check_grid(const std::vector<double>& grid, std::size_t M) {
    if (grid.empty()) throw PolicyError("exhaustive search: empty grid");
    const double tuples = std::pow(static_cast<double>(grid.size()), static_cast<double>(M));
    if (tuples > 5e7)
        throw PolicyError("exhaustive search: " + format_number(tuples) + " tuples is too many");
}

}  // namespace

std::vector<double> exhaustive_grid(const Model& model, std::size_t points) {
    if (points < 2) throw PolicyError("exhaustive grid needs at least 2 points");
    std::vector<double> grid{0.0};
    for (std::size_t k = 1; k + 1 < points; ++k)
        grid.push_back(model.c().quantile(static_cast<double>(k) / static_cast<double>(points - 1)));
    grid.push_back(threshold_search_limit(model));
    return grid;
}

ExhaustiveNp exhaustive_np(const Model& model, const std::vector<double>& grid) {
    const std::size_t M = model.sources();
    check_grid(grid, M);
    // Per-value cycle length and wait, so a tuple costs O(M).
    std::vector<double> cycle(grid.size()), wait(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        wait[k] = mean_wait_np(model, grid[k]);
        cycle[k] = mean_cycle_np(model, grid[k]);
    }
    const std::vector<double>& w = model.config().weights;
    std::vector<double> cost(M);
    std::vector<std::size_t> best_idx;
    double best = std::numeric_limits<double>::infinity();
    for_each_tuple(M, grid.size(), [&](const std::vector<std::size_t>& idx) {
        // With f from the square-root rule the frequency part collapses to
        // (sum_m sqrt(w_m cycle_m))^2.
        double root = 0.0, rest = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            root += std::sqrt(w[m] * cycle[idx[m]]);
            rest += w[m] * wait[idx[m]];
        }
        const double total = root * root + rest;
        if (total < best) {
            best = total;
            best_idx = idx;
        }
    });
    std::vector<double> theta(M);
    for (std::size_t m = 0; m < M; ++m) theta[m] = grid[best_idx[m]];
    ThresholdVector tv(theta);
    FreqVector f = optimal_f_np(model, tv);
    const double total = paoi_np(model, f, tv).total;
    return {std::move(f), std::move(tv), total};
}

ExhaustiveP exhaustive_p(const Model& model, const std::vector<double>& grid) {
    const std::size_t M = model.sources();
    check_grid(grid, M);
    std::vector<SamplerMoments> moments;
    for (double v : grid) moments.push_back(sampler_moments(model, PiecewiseFn::constant(v)));

    std::vector<SamplerMoments> pick(M);
    std::vector<std::size_t> best_idx;
    double best = std::numeric_limits<double>::infinity();
    for_each_tuple(M, grid.size(), [&](const std::vector<std::size_t>& idx) {
        for (std::size_t m = 0; m < M; ++m) pick[m] = moments[idx[m]];
        const double total = paoi_p(model, optimal_f_p(model, pick), pick).total;
        if (total < best) {
            best = total;
            best_idx = idx;
        }
    });
    std::vector<double> delay(M);
    for (std::size_t m = 0; m < M; ++m) {
        delay[m] = grid[best_idx[m]];
        pick[m] = moments[best_idx[m]];
    }
    FreqVector f = optimal_f_p(model, pick);
    return {std::move(f), std::move(delay), best};
}

}  // namespace paoi
