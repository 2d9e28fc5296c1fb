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

#include "paoi/analytic.hpp"

#include <array>

#include "paoi/error.hpp"
#include "paoi/quadrature.hpp"

namespace paoi {
namespace {

void require_mode(const Model& model, ServerMode mode, const char* who) {
    if (model.config().mode != mode)
        throw PolicyError(std::string(who) + ": requires a " + to_string(mode) + " configuration");
}

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw PolicyError(std::string(what) + " has " + std::to_string(got) +
                          " entries, expected " + std::to_string(want));
}

// E_T[fn(t, g(t))] with panel edges on the knots of g.
template <class F>
double expect_over_t(const Model& model, const PiecewiseFn& g, F&& fn) {
    return quad::expect(model.t(), [&](double t) { return fn(t, g(t)); }, g.grid());
}

}  // namespace

double mean_wait_np(const Model& model, double theta) {
    return expected_excess(model.c(), model.t(), theta);
}

double mean_cycle_np(const Model& model, double theta) {
    return model.mean_t() + mean_wait_np(model, theta) + model.c().truncated_mean(theta);
}

AnalyticResult paoi_np(const Model& model, const FreqVector& f, const ThresholdVector& theta) {
    require_mode(model, ServerMode::NonPreemptive, "paoi_np");
    const std::size_t M = model.sources();
    require_size(f.size(), M, "frequency vector");
    require_size(theta.size(), M, "threshold vector");

    AnalyticResult out;
    out.sources.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        SourceTerms& s = out.sources[m];
        s.wait = mean_wait_np(model, theta[m]);
        s.truncated = model.c().truncated_mean(theta[m]);
        s.cycle = model.mean_t() + s.wait + s.truncated;
        s.sojourn = model.mean_t() + s.wait + model.mean_c();
        out.mean_z += f[m] * s.cycle;
    }
    for (std::size_t m = 0; m < M; ++m) {
        SourceTerms& s = out.sources[m];
        s.peak = out.mean_z / f[m] + s.sojourn;
        out.total += model.weight(m) * s.peak;
    }
    return out;
}

SamplerMoments sampler_moments(const Model& model, const PiecewiseFn& g) {
    const Distribution& c = model.c();
    const DeliveryKernel& k = model.kernel();
    const auto v = quad::expect_n<3>(
        model.t(),
        [&](double t) {
            const double gamma = g(t);
            const auto d = k.at(gamma);
            return std::array<double, 3>{c.truncated_mean(gamma), d.success,
                                         t * d.success + d.partial};
        },
        g.grid());
    return {v[0], v[1], v[2]};
}

double sampled_truncated_mean(const Model& model, const PiecewiseFn& g) {
    const Distribution& c = model.c();
    return expect_over_t(model, g, [&](double, double gamma) { return c.truncated_mean(gamma); });
}

double mean_Z_p(const Model& model, const FreqVector& f, const SamplingFunctions& g) {
    require_size(g.size(), f.size(), "sampling functions");
    double z = model.mean_t();
    for (std::size_t m = 0; m < g.size(); ++m) z += f[m] * sampled_truncated_mean(model, g[m]);
    return z;
}

double delivery_prob(const Model& model, const PiecewiseFn& g) {
    const DeliveryKernel& k = model.kernel();
    return expect_over_t(model, g, [&](double, double gamma) { return k.at(gamma).success; });
}

double delivered_sojourn(const Model& model, const PiecewiseFn& g) {
    const DeliveryKernel& k = model.kernel();
    return expect_over_t(model, g, [&](double t, double gamma) {
        const auto v = k.at(gamma);
        return t * v.success + v.partial;
    });
}

AnalyticResult paoi_p(const Model& model, const FreqVector& f, const SamplingFunctions& g) {
    require_mode(model, ServerMode::Preemptive, "paoi_p");
    require_size(g.size(), model.sources(), "sampling functions");
    std::vector<SamplerMoments> moments;
    moments.reserve(g.size());
    for (const PiecewiseFn& gm : g) moments.push_back(sampler_moments(model, gm));
    return paoi_p(model, f, moments);
}

AnalyticResult paoi_p(const Model& model, const FreqVector& f,
                      const std::vector<SamplerMoments>& moments) {
    require_mode(model, ServerMode::Preemptive, "paoi_p");
    const std::size_t M = model.sources();
    require_size(f.size(), M, "frequency vector");
    require_size(moments.size(), M, "sampler moments");

    AnalyticResult out;
    out.sources.resize(M);
    out.mean_z = model.mean_t();
    for (std::size_t m = 0; m < M; ++m) {
        SourceTerms& s = out.sources[m];
        s.truncated = moments[m].truncated;
        s.delivery_prob = moments[m].delivery;
        s.sojourn = moments[m].sojourn;
        s.cycle = model.mean_t() + s.truncated;
        out.mean_z += f[m] * s.truncated;
    }
    for (std::size_t m = 0; m < M; ++m) {
        SourceTerms& s = out.sources[m];
        if (!(s.delivery_prob > 0.0))
            throw PolicyError("paoi_p: source " + std::to_string(m) + " is never delivered");
        s.peak = (out.mean_z / f[m] + s.sojourn) / s.delivery_prob;
        out.total += model.weight(m) * s.peak;
    }
    return out;
}

}  // namespace paoi
