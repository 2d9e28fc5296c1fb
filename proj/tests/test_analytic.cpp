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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "paoi/analytic.hpp"
#include "paoi/error.hpp"
#include "paoi/expectations.hpp"

using namespace paoi;

namespace {

Model make(std::vector<double> w, Distribution t, Distribution c, ServerMode mode) {
    return Model(SystemConfig{std::move(w), t, c, mode});
}

// Non-preemptive weighted peak age written out directly from its terms:
//   E[Z] sum_m w_m / f_m + sum_m w_m Wbar^m + E[T] + E[C],
//   E[Z] = sum_n f_n (E[T] + Wbar^n + E[min{C, theta^n}]).
double np_reference(const Model& model, const std::vector<double>& f, const std::vector<double>& theta) {
    double ez = 0.0, inv = 0.0, waits = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) {
        const double wait = expected_excess(model.c(), model.t(), theta[m]);
        ez += f[m] * (model.mean_t() + wait + model.c().truncated_mean(theta[m]));
        inv += model.weight(m) / f[m];
        waits += model.weight(m) * wait;
    }
    return ez * inv + waits + model.mean_t() + model.mean_c();
}

}  // namespace

TEST_CASE("deterministic single source [DERIVED]") {
    // T = C = 1 and a threshold that never binds: Z = 2, peak = Z + T + C = 4.
    const Model model = make({1.0}, Distribution::deterministic(1.0), Distribution::deterministic(1.0),
                             ServerMode::NonPreemptive);
    const AnalyticResult r = paoi_np(model, FreqVector({1.0}), ThresholdVector({10.0}));
    CHECK(r.total == doctest::Approx(4.0));
    CHECK(r.mean_z == doctest::Approx(2.0));
    CHECK(r.sources[0].wait == 0.0);
    // theta = 0: the next packet arrives exactly when computation ends, Z = 1.
    CHECK(paoi_np(model, FreqVector({1.0}), ThresholdVector({0.0})).total == doctest::Approx(3.0));
}

TEST_CASE("non-preemptive formula matches its written-out terms") {
    const Model model = make({0.2, 0.3, 0.5}, Distribution::exponential(4.0), Distribution::gamma(2.0, 0.5),
                             ServerMode::NonPreemptive);
    const std::vector<double> f{0.5, 0.2, 0.3}, theta{0.0, 0.4, 2.0};
    const AnalyticResult r = paoi_np(model, FreqVector(f), ThresholdVector(theta));
    CHECK(r.total == doctest::Approx(np_reference(model, f, theta)).epsilon(1e-12));
    double weighted = 0.0;
    for (std::size_t m = 0; m < 3; ++m) weighted += model.weight(m) * r.sources[m].peak;
    CHECK(weighted == doctest::Approx(r.total).epsilon(1e-12));
    CHECK(mean_wait_np(model, 0.4) == doctest::Approx(r.sources[1].wait));
    CHECK(mean_cycle_np(model, 0.4) ==
          doctest::Approx(model.mean_t() + r.sources[1].wait + model.c().truncated_mean(0.4)));
}

TEST_CASE("preemptive closed forms for exponential times [DERIVED]") {
    // Quadratures drop T mass beyond its 1 - 1e-9 quantile, hence 1e-7.
    // g = 0, C ~ Exp(mu), T ~ Exp(lambda): P = mu / (lambda + mu),
    // E[(T + C) 1{C <= T'}] = E[T] P + mu / (lambda + mu)^2, peak = (E[T] + sojourn) / P.
    for (auto [lambda, mu] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
        const Model model = make({1.0}, Distribution::exponential(lambda), Distribution::exponential(mu),
                                 ServerMode::Preemptive);
        const double p = mu / (lambda + mu);
        const double soj = p / lambda + mu / ((lambda + mu) * (lambda + mu));
        const AnalyticResult r = paoi_p(model, FreqVector({1.0}), {PiecewiseFn::constant(0.0)});
        CHECK(r.sources[0].delivery_prob == doctest::Approx(p).epsilon(1e-7));
        CHECK(r.sources[0].sojourn == doctest::Approx(soj).epsilon(1e-7));
        CHECK(r.total == doctest::Approx((1.0 / lambda + soj) / p).epsilon(1e-7));
    }
    // A delay that never binds removes preemption: peak = 2 (E[T] + E[C]).
    const Model model = make({1.0}, Distribution::exponential(1.0), Distribution::exponential(1.0),
                             ServerMode::Preemptive);
    CHECK(paoi_p(model, FreqVector({1.0}), {PiecewiseFn::constant(1e6)}).total == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("sampler moments agree with Monte Carlo") {
    const Model model = make({1.0}, Distribution::pareto(2.5, 0.6), Distribution::lognormal(-0.5, 1.0),
                             ServerMode::Preemptive);
    const PiecewiseFn g({0.7, 1.0, 2.0}, {1.5, 0.4, 0.0});
    const SamplerMoments mom = sampler_moments(model, g);
    auto st = oracle::sampler_for(model.t());
    auto sc = oracle::sampler_for(model.c());
    oracle::Engine e(2024);
    oracle::Moments mo(3);
    for (int i = 0; i < 2'000'000; ++i) {
        const double t = st(e), c = sc(e), t2 = st(e);
        const double gt = g(t);
        const bool ok = c <= gt + t2;
        mo.add(0, std::min(c, gt));
        mo.add(1, ok ? 1.0 : 0.0);
        mo.add(2, ok ? t + c : 0.0);
        mo.next();
    }
    CHECK(mo.get(0).agrees(mom.truncated));
    CHECK(mo.get(1).agrees(mom.delivery));
    CHECK(mo.get(2).agrees(mom.sojourn));
    CHECK(sampled_truncated_mean(model, g) == doctest::Approx(mom.truncated).epsilon(1e-8));
    CHECK(delivery_prob(model, g) == doctest::Approx(mom.delivery).epsilon(1e-8));
    CHECK(delivered_sojourn(model, g) == doctest::Approx(mom.sojourn).epsilon(1e-8));
}

TEST_CASE("preemptive formula matches its written-out terms") {
    const Model model = make({0.3, 0.7}, Distribution::exponential(2.0), Distribution::gamma(2.0, 0.5),
                             ServerMode::Preemptive);
    const SamplingFunctions g{PiecewiseFn({0.2, 1.0}, {0.8, 0.1}), PiecewiseFn::constant(0.0)};
    const FreqVector f({0.4, 0.6});
    const AnalyticResult r = paoi_p(model, f, g);
    double ez = model.mean_t();
    for (std::size_t m = 0; m < 2; ++m) ez += f[m] * sampled_truncated_mean(model, g[m]);
    CHECK(mean_Z_p(model, f, g) == doctest::Approx(ez).epsilon(1e-10));
    double total = 0.0;
    for (std::size_t m = 0; m < 2; ++m)
        total += model.weight(m) / delivery_prob(model, g[m]) * (ez / f[m] + delivered_sojourn(model, g[m]));
    CHECK(r.total == doctest::Approx(total).epsilon(1e-10));
}

TEST_CASE("mode and size mismatches are rejected") {
    const Model np = make({0.5, 0.5}, Distribution::exponential(1.0), Distribution::exponential(1.0),
                          ServerMode::NonPreemptive);
    const Model p = make({0.5, 0.5}, Distribution::exponential(1.0), Distribution::exponential(1.0),
                         ServerMode::Preemptive);
    CHECK_THROWS_AS(paoi_np(p, FreqVector::uniform(2), ThresholdVector::zeros(2)), PolicyError);
    CHECK_THROWS_AS(paoi_p(np, FreqVector::uniform(2), SamplingFunctions(2, PiecewiseFn::constant(0))), PolicyError);
    CHECK_THROWS_AS(paoi_np(np, FreqVector::uniform(3), ThresholdVector::zeros(2)), PolicyError);
    CHECK_THROWS_AS(FreqVector({0.5, 0.6}), PolicyError);
    CHECK_THROWS_AS(SystemConfig({{0.5, 0.6}}).validate(), ConfigError);
}
