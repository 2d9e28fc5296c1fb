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

#include "paoi/frequency.hpp"

#include <cmath>
#include <numeric>

#include "paoi/analytic.hpp"
#include "paoi/error.hpp"

namespace paoi {

FreqVector sqrt_rule(std::span<const double> weights, std::span<const double> costs) {
    if (weights.size() != costs.size() || weights.empty())
        throw PolicyError("sqrt_rule: weights and costs must have the same nonzero length");
    std::vector<double> f(weights.size());
    for (std::size_t m = 0; m < f.size(); ++m) f[m] = std::sqrt(weights[m] / costs[m]);
    const double sum = std::accumulate(f.begin(), f.end(), 0.0);
    for (double& x : f) x /= sum;
    // Renormalize once more so the sum is 1 to the last ulp or two.
    const double again = std::accumulate(f.begin(), f.end(), 0.0);
    for (double& x : f) x /= again;
    return FreqVector(std::move(f));
}

FreqVector optimal_f_np(const Model& model, const ThresholdVector& theta) {
    const std::size_t M = model.sources();
    if (theta.size() != M) throw PolicyError("optimal_f_np: threshold vector size mismatch");
    std::vector<double> cost(M);
    for (std::size_t m = 0; m < M; ++m) cost[m] = mean_cycle_np(model, theta[m]);
    return sqrt_rule(model.config().weights, cost);
}

FreqVector optimal_f_p(const Model& model, const SamplingFunctions& g) {
    const std::size_t M = model.sources();
    if (g.size() != M) throw PolicyError("optimal_f_p: sampling function count mismatch");
    std::vector<SamplerMoments> moments;
    moments.reserve(M);
    for (const PiecewiseFn& gm : g) moments.push_back(sampler_moments(model, gm));
    return optimal_f_p(model, moments);
}

FreqVector optimal_f_p(const Model& model, const std::vector<SamplerMoments>& moments) {
    const std::size_t M = model.sources();
    if (moments.size() != M) throw PolicyError("optimal_f_p: sampler moment count mismatch");
    std::vector<double> cost(M);
    for (std::size_t m = 0; m < M; ++m)
        cost[m] = moments[m].delivery * (moments[m].truncated + model.mean_t());
    return sqrt_rule(model.config().weights, cost);
}

}  // namespace paoi
