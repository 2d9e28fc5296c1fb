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

#include "paoi/threshold.hpp"

#include "paoi/analytic.hpp"
#include "paoi/error.hpp"

namespace paoi {
namespace {

double inverse_weighted_sum(const Model& model, const FreqVector& f) {
    double sum = 0.0;
    for (std::size_t n = 0; n < model.sources(); ++n) sum += model.weight(n) / f[n];
    return sum;
}

}  // namespace

double threshold_objective(const Model& model, const FreqVector& f, std::size_t m, double theta) {
    if (f.size() != model.sources()) throw PolicyError("threshold_objective: f size mismatch");
    const double wait = mean_wait_np(model, theta);
    const double trunc = model.c().truncated_mean(theta);
    return model.weight(m) * wait + f[m] * (wait + trunc) * inverse_weighted_sum(model, f);
}

double threshold_search_limit(const Model& model) { return model.c().quantile(1.0 - 1e-6); }

ScalarMin optimize_threshold(const Model& model, const FreqVector& f, std::size_t m,
                             const LineSearchOptions& opts) {
    if (f.size() != model.sources()) throw PolicyError("optimize_threshold: f size mismatch");
    const double w = model.weight(m);
    const double coef = f[m] * inverse_weighted_sum(model, f);
    const Distribution& c = model.c();
    auto objective = [&](double theta) {
        const double wait = mean_wait_np(model, theta);
        return w * wait + coef * (wait + c.truncated_mean(theta));
    };
    return minimize_on_interval(objective, 0.0, threshold_search_limit(model), opts);
}

ThresholdVector optimize_all_thresholds(const Model& model, const FreqVector& f,
                                        const LineSearchOptions& opts) {
    std::vector<double> theta(model.sources());
    for (std::size_t m = 0; m < theta.size(); ++m) theta[m] = optimize_threshold(model, f, m, opts).x;
    return ThresholdVector(std::move(theta));
}

}  // namespace paoi
