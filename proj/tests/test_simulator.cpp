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

#include "paoi/alternating.hpp"
#include "paoi/analytic.hpp"
#include "paoi/error.hpp"
#include "paoi/expectations.hpp"
#include "paoi/simulator.hpp"

using namespace paoi;

namespace {

SystemConfig np_config(std::vector<double> w, double mean_t) {
    return {std::move(w), Distribution::exponential(1.0 / mean_t), Distribution::gamma(2.0, 0.5),
            ServerMode::NonPreemptive};
}

SystemConfig p_config(std::vector<double> w, double mean_t) {
    SystemConfig c = np_config(std::move(w), mean_t);
    c.mode = ServerMode::Preemptive;
    return c;
}

SimOptions with_trace(std::size_t n, std::uint64_t seed = 1) {
    SimOptions o;
    o.n_packets = n;
    o.seed = seed;
    o.record_trace = true;
    return o;
}

bool agrees(double sim, double stderr_, double analytic) {
    return std::abs(sim - analytic) <= std::max(0.01 * std::abs(analytic), 3.0 * stderr_);
}

}  // namespace

TEST_CASE("deterministic timeline [DERIVED]") {
    // T = C = 1, one source, threshold never binds: every peak is Z + T + C = 4.
    const SystemConfig cfg{{1.0}, Distribution::deterministic(1.0), Distribution::deterministic(1.0),
                           ServerMode::NonPreemptive};
    SimOptions o = with_trace(1000);
    const SimResult r = simulate(cfg, RandomScheduler{FreqVector({1.0})}, FmtSampler{ThresholdVector({10.0})}, o);
    CHECK(r.total == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.mean_z == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].generated - r.trace[i - 1].generated == doctest::Approx(2.0));
        CHECK(r.trace[i].wait == 0.0);
        CHECK(r.trace[i].delivery - r.trace[i].generated == doctest::Approx(2.0));
    }
}

TEST_CASE("trace respects the pipeline invariants") {
    const SystemConfig cfg = np_config({0.3, 0.7}, 0.2);
    const SimResult r = simulate(cfg, RandomScheduler{FreqVector({0.4, 0.6})},
                                 FmtSampler{ThresholdVector({0.0, 0.5})}, with_trace(20000));
    for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) {
        const PacketRecord& a = r.trace[i];
        const PacketRecord& b = r.trace[i + 1];
        REQUIRE(a.delivered);
        CHECK(a.wait >= 0.0);
        CHECK(a.delivery == doctest::Approx(a.generated + a.transmission + a.wait + a.computation));
        // Inter-generation time is at most T + W + C of the packet in service.
        CHECK(b.generated - a.generated <= a.transmission + a.wait + a.computation + 1e-9);
        // At most one packet waits: the next service starts after this one ends.
        CHECK(b.generated + b.transmission + b.wait >= a.delivery - 1e-9);
    }
}

TEST_CASE("zero wait equals threshold zero and delay zero on every path [PAPER]") {
    const SystemConfig np = np_config({0.2, 0.3, 0.5}, 0.3);
    const RandomScheduler sched{FreqVector({0.3, 0.3, 0.4})};
    const SimResult a = simulate(np, sched, ZeroWaitSampler{}, with_trace(5000, 9));
    const SimResult b = simulate(np, sched, FmtSampler{ThresholdVector::zeros(3)}, with_trace(5000, 9));
    CHECK(a.trace == b.trace);
    CHECK(a.total == b.total);

    const SystemConfig p = p_config({0.2, 0.3, 0.5}, 0.3);
    const SimResult c = simulate(p, sched, ZeroWaitSampler{}, with_trace(5000, 9));
    const SimResult d = simulate(p, sched, SmtSampler{SamplingFunctions(3, PiecewiseFn::constant(0.0))},
                                 with_trace(5000, 9));
    CHECK(c.trace == d.trace);
    CHECK(c.total == d.total);
}

TEST_CASE("same seed, same result; different seed, different result") {
    const SystemConfig cfg = p_config({0.5, 0.5}, 0.5);
    const SamplerPolicy s = SmtSampler{{PiecewiseFn({0.5}, {0.3}), PiecewiseFn::constant(0.0)}};
    const SimResult a = simulate(cfg, MafScheduler{}, s, with_trace(3000, 4));
    const SimResult b = simulate(cfg, MafScheduler{}, s, with_trace(3000, 4));
    const SimResult c = simulate(cfg, MafScheduler{}, s, with_trace(3000, 5));
    CHECK(a.trace == b.trace);
    CHECK(a.total == b.total);
    CHECK(a.total != c.total);
}

TEST_CASE("non-preemptive simulation matches the closed form") {
    const SystemConfig cfg = np_config({0.25, 0.75}, 0.1);
    const Model model(cfg);
    const FreqVector f({0.35, 0.65});
    const ThresholdVector theta({0.0, 0.6});
    SimOptions o;
    o.n_packets = 1'000'000;
    const SimResult r = simulate(cfg, RandomScheduler{f}, FmtSampler{theta}, o);
    const AnalyticResult a = paoi_np(model, f, theta);
    CHECK(agrees(r.total, r.stderr_total, a.total));
    CHECK(r.mean_z == doctest::Approx(a.mean_z).epsilon(0.01));
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK(r.sources[m].mean_wait == doctest::Approx(a.sources[m].wait).epsilon(0.01));
        const double sd = std::sqrt(f[m] * (1 - f[m]) / o.n_packets);
        CHECK(std::abs(r.sources[m].realized_freq - f[m]) <= 3 * sd);
        CHECK(r.sources[m].dropped == 0);
    }
}

TEST_CASE("preemptive simulation matches the closed form") {
    const SystemConfig cfg = p_config({0.4, 0.6}, 0.5);
    const Model model(cfg);
    const FreqVector f({0.45, 0.55});
    const SamplingFunctions g{PiecewiseFn({0.2, 1.0}, {0.9, 0.1}), PiecewiseFn::constant(0.0)};
    SimOptions o;
    o.n_packets = 1'000'000;
    const SimResult r = simulate(cfg, RandomScheduler{f}, SmtSampler{g}, o);
    const AnalyticResult a = paoi_p(model, f, g);
    CHECK(agrees(r.total, r.stderr_total, a.total));
    for (std::size_t m = 0; m < 2; ++m)
        CHECK(r.sources[m].delivery_fraction == doctest::Approx(a.sources[m].delivery_prob).epsilon(0.01));

    // A delay that never binds means nothing is preempted.
    const SimResult none = simulate(cfg, RandomScheduler{f},
                                    SmtSampler{SamplingFunctions(2, PiecewiseFn::constant(1e9))}, with_trace(20000));
    for (const SourceStats& s : none.sources) CHECK(s.dropped == 0);
}

TEST_CASE("most-aged-first serves the stalest source at the decision instant") {
    // Non-preemptive: packet j's source is chosen when packet j-1 enters
    // service, from the destination ages at that instant. Packet j-1 itself
    // has not been delivered yet.
    const SystemConfig cfg = np_config({0.2, 0.3, 0.5}, 0.4);
    const SimResult r = simulate(cfg, MafScheduler{}, FmtSampler{ThresholdVector({0.0, 0.3, 1.0})}, with_trace(3000));
    const auto& tr = r.trace;
    for (std::size_t j = 2; j < tr.size(); ++j) {
        const double now = tr[j - 1].generated + tr[j - 1].transmission + tr[j - 1].wait;
        std::vector<double> latest(3, tr[0].generated);
        for (std::size_t k = 1; k + 1 < j; ++k)
            if (tr[k].delivery <= now) latest[tr[k].source] = std::max(latest[tr[k].source], tr[k].generated);
        std::size_t best = 0;
        for (std::size_t m = 1; m < 3; ++m)
            if (now - latest[m] > now - latest[best]) best = m;
        CAPTURE(j);
        CHECK(tr[j].source == best);
    }
    // First decision is a three-way tie after packet 0.
    CHECK(tr[1].source == 0);
}

TEST_CASE("most-aged-first in the preemptive server") {
    // Packet j's source is chosen when it is generated; packet j-1 counts
    // only if it was delivered by then.
    const SystemConfig cfg = p_config({0.2, 0.3, 0.5}, 0.4);
    const SimResult r = simulate(cfg, MafScheduler{},
                                 SmtSampler{SamplingFunctions(3, PiecewiseFn::constant(0.2))}, with_trace(3000));
    const auto& tr = r.trace;
    for (std::size_t j = 2; j < tr.size(); ++j) {
        const double now = tr[j].generated;
        std::vector<double> latest(3, tr[0].generated);
        for (std::size_t k = 1; k < j; ++k)
            if (tr[k].delivered && tr[k].delivery <= now)
                latest[tr[k].source] = std::max(latest[tr[k].source], tr[k].generated);
        std::size_t best = 0;
        for (std::size_t m = 1; m < 3; ++m)
            if (now - latest[m] > now - latest[best]) best = m;
        CAPTURE(j);
        CHECK(tr[j].source == best);
    }
}

TEST_CASE("errors") {
    const SystemConfig cfg = np_config({0.5, 0.5}, 0.5);
    SimOptions few;
    few.n_packets = 50;
    CHECK_THROWS_AS(simulate(cfg, MafScheduler{}, ZeroWaitSampler{}, few), InsufficientDeliveries);
    CHECK_THROWS_AS(simulate(cfg, MafScheduler{}, SmtSampler{SamplingFunctions(2, PiecewiseFn::constant(0))}),
                    PolicyError);
    SimOptions zero;
    zero.n_packets = 0;
    CHECK_THROWS_AS(simulate(cfg, MafScheduler{}, ZeroWaitSampler{}, zero), PolicyError);
}
