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

#include "paoi/alternating.hpp"

#include <cmath>

#include "paoi/error.hpp"
#include "paoi/frequency.hpp"
#include "paoi/threshold.hpp"

namespace paoi {

std::string to_string(Phase phase) {
    switch (phase) {
    case Phase::Init: return "init";
    case Phase::Frequency: return "frequency";
    case Phase::Sampler: return "sampler";
    }
    return {};
}

namespace {

double resolve_epsilon(const Model& model, const AlternatingOptions& opts) {
    return opts.epsilon > 0.0 ? opts.epsilon : 1e-6 * (model.mean_t() + model.mean_c());
}

// Values of `g` on `grid`, so two functions can be blended knot by knot.
std::vector<double> resample(const PiecewiseFn& g, const std::vector<double>& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = g(grid[j]);
    return out;
}

}  // namespace

NpSolution solve_np(const Model& model, const AlternatingOptions& opts,
                    std::optional<FreqVector> f_init, std::optional<ThresholdVector> theta_init) {
    if (model.config().mode != ServerMode::NonPreemptive)
        throw PolicyError("solve_np: requires a non_preemptive configuration");
    const std::size_t M = model.sources();
    const double eps = resolve_epsilon(model, opts);

    FreqVector f = f_init.value_or(FreqVector::uniform(M));
    ThresholdVector theta = theta_init.value_or(ThresholdVector::zeros(M));
    if (f.size() != M || theta.size() != M)
        throw PolicyError("solve_np: initial f and theta must have one entry per source");

    OptTrace trace;
    AnalyticResult current = paoi_np(model, f, theta);
    trace.entries.push_back({0, Phase::Init, f.values(), theta.values(), {}, current.total});

    double p_old = 0.0;
    double p = current.total;
    std::size_t it = 0;
    while (std::abs(p_old - p) > eps) {
        if (it == opts.max_iters) break;
        ++it;

        f = optimal_f_np(model, theta);
        const double after_f = paoi_np(model, f, theta).total;
        trace.entries.push_back({it, Phase::Frequency, f.values(), theta.values(), {}, after_f});

        std::vector<double> next = optimize_all_thresholds(model, f, opts.search).values();
        for (std::size_t m = 0; m < M; ++m) {
            if (threshold_objective(model, f, m, next[m]) > threshold_objective(model, f, m, theta[m]))
                next[m] = theta[m];
        }
        theta = ThresholdVector(std::move(next));
        current = paoi_np(model, f, theta);
        trace.entries.push_back({it, Phase::Sampler, f.values(), theta.values(), {}, current.total});

        p_old = p;
        p = current.total;
    }
    trace.iterations = it;
    trace.last_change = std::abs(p_old - p);
    trace.converged = trace.last_change <= eps;
    return {std::move(f), std::move(theta), std::move(current), std::move(trace)};
}

PSolution solve_p(const Model& model, const AlternatingOptions& opts, std::optional<FreqVector> f_init,
                  std::optional<SamplingFunctions> g_init) {
    if (model.config().mode != ServerMode::Preemptive)
        throw PolicyError("solve_p: requires a preemptive configuration");
    const std::size_t M = model.sources();
    const double eps = resolve_epsilon(model, opts);
    const std::vector<double> grid = make_t_grid(model.t(), opts.dinkelbach.knots);

    FreqVector f = f_init.value_or(FreqVector::uniform(M));
    SamplingFunctions g = g_init.value_or(
        SamplingFunctions(M, PiecewiseFn(grid, std::vector<double>(grid.size(), 0.0))));
    if (f.size() != M || g.size() != M)
        throw PolicyError("solve_p: initial f and g must have one entry per source");

    // Only one source's function changes per trial, so moments are cached.
    std::vector<SamplerMoments> moments;
    for (const PiecewiseFn& gm : g) moments.push_back(sampler_moments(model, gm));

    PSolution out{f, g, {}, {}, 0};
    OptTrace& trace = out.trace;
    AnalyticResult current = paoi_p(model, f, moments);
    trace.entries.push_back({0, Phase::Init, f.values(), {}, g, current.total});

    double p_old = 0.0;
    double p = current.total;
    std::size_t it = 0;
    while (std::abs(p_old - p) > eps) {
        if (it == opts.max_iters) break;
        ++it;

        f = optimal_f_p(model, moments);
        double incumbent = paoi_p(model, f, moments).total;
        trace.entries.push_back({it, Phase::Frequency, f.values(), {}, g, incumbent});

        // Two candidate updates, both solved against the same start point
        // (Jacobi order, so symmetric sources stay symmetric):
        //  - own-term sweep: each source minimizes its own ratio;
        //  - coupled step: the same solves with the first-order price of how
        //    g^m stretches E[Z] in every other term, moving all sources by a
        //    common backtracked step so the total never rises.
        // The own-term sweep alone settles where no source can improve its
        // own term, which can leave the total above what the coupled step
        // reaches; the coupled step alone stalls at zero wait when that is a
        // stationary point. Keeping the better of the two avoids both.
        SamplingFunctions swept = g;
        std::vector<SamplerMoments> swept_moments = moments;
        for (std::size_t m = 0; m < M; ++m) {
            const SamplerSubproblem sub(model, f, g, m, opts.dinkelbach);
            DinkelbachResult solved = sub.solve();
            out.dinkelbach_iterations += solved.iterations;
            swept[m] = std::move(solved.g);
            swept_moments[m] = sampler_moments(model, swept[m]);
        }
        const double swept_value = paoi_p(model, f, swept_moments).total;

        std::vector<std::vector<double>> targets(M);
        for (std::size_t m = 0; m < M; ++m) {
            double others = 0.0;
            for (std::size_t n = 0; n < M; ++n)
                if (n != m) others += model.weight(n) / (f[n] * moments[n].delivery);
            const double coupling = f[m] * others * moments[m].delivery;

            const SamplerSubproblem sub(model, f, g, m, opts.dinkelbach, coupling);
            DinkelbachResult solved = sub.solve();
            out.dinkelbach_iterations += solved.iterations;
            targets[m] = solved.g.values();
        }
        SamplingFunctions stepped = g;
        std::vector<SamplerMoments> stepped_moments = moments;
        double stepped_value = incumbent;
        for (double step = 1.0; step >= 1.0 / 64.0; step *= 0.5) {
            SamplingFunctions trial;
            std::vector<SamplerMoments> trial_moments;
            for (std::size_t m = 0; m < M; ++m) {
                const std::vector<double> from = resample(g[m], grid);
                std::vector<double> blend(grid.size());
                for (std::size_t j = 0; j < grid.size(); ++j)
                    blend[j] = from[j] + step * (targets[m][j] - from[j]);
                trial.emplace_back(grid, std::move(blend));
                trial_moments.push_back(sampler_moments(model, trial.back()));
            }
            const double value = paoi_p(model, f, trial_moments).total;
            if (value <= stepped_value) {
                stepped = std::move(trial);
                stepped_moments = std::move(trial_moments);
                stepped_value = value;
                break;
            }
        }

        if (swept_value <= stepped_value && swept_value <= incumbent) {
            g = std::move(swept);
            moments = std::move(swept_moments);
        } else {
            g = std::move(stepped);
            moments = std::move(stepped_moments);
        }
        current = paoi_p(model, f, moments);
        trace.entries.push_back({it, Phase::Sampler, f.values(), {}, g, current.total});

        p_old = p;
        p = current.total;
    }
    trace.iterations = it;
    trace.last_change = std::abs(p_old - p);
    trace.converged = trace.last_change <= eps;
    out.f = std::move(f);
    out.g = std::move(g);
    out.result = std::move(current);
    return out;
}

}  // namespace paoi
