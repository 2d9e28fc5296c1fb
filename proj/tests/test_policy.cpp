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
#include <map>
#include <vector>

#include <doctest.h>

#include "paoi/error.hpp"
#include "paoi/policy.hpp"

using namespace paoi;

TEST_CASE("round robin realizes rational frequencies exactly") {
    const FreqVector f({1.0 / 15, 2.0 / 15, 3.0 / 15, 4.0 / 15, 5.0 / 15});
    const WrrScheduler w = WrrScheduler::from_frequencies(f);
    REQUIRE(w.sequence.size() == 15);
    std::map<std::size_t, int> count;
    for (std::size_t m : w.sequence) ++count[m];
    for (std::size_t m = 0; m < 5; ++m) CHECK(count[m] == static_cast<int>(m + 1));
    for (std::size_t m = 0; m < 5; ++m) CHECK(w.realized()[m] == doctest::Approx(f[m]).epsilon(1e-15));
    // Interleaved: no source is served twice in a row within a cycle.
    for (std::size_t i = 0; i + 1 < 15; ++i) CHECK(w.sequence[i] != w.sequence[i + 1]);
}

TEST_CASE("round robin approximates irrational frequencies") {
    const double a = 1.0 / M_PI;
    const FreqVector f({a, 1.0 - a});
    const WrrScheduler w = WrrScheduler::from_frequencies(f, 10000);
    CHECK(w.sequence.size() == 10000);
    CHECK(std::abs(w.realized()[0] - a) <= 0.5e-4 + 1e-15);
    const WrrScheduler half = WrrScheduler::from_frequencies(FreqVector({0.5, 0.5}));
    CHECK(half.sequence == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(WrrScheduler::from_frequencies(f, 0), PolicyError);
}

TEST_CASE("policy names and compatibility") {
    CHECK(describe(SchedulerPolicy{RandomScheduler{FreqVector::uniform(2)}}) == "random");
    CHECK(describe(SchedulerPolicy{WrrScheduler{{0, 1}}}) == "wrr");
    CHECK(describe(SchedulerPolicy{MafScheduler{}}) == "maf");
    CHECK(describe(SamplerPolicy{ZeroWaitSampler{}}) == "zero_wait");
    CHECK(describe(SamplerPolicy{FmtSampler{ThresholdVector::zeros(2)}}) == "fmt");
    CHECK(describe(SamplerPolicy{SmtSampler{{PiecewiseFn::constant(0), PiecewiseFn::constant(0)}}}) == "smt");

    SystemConfig np{{0.5, 0.5}, Distribution::exponential(1.0), Distribution::exponential(1.0), ServerMode::NonPreemptive};
    SystemConfig p = np;
    p.mode = ServerMode::Preemptive;
    const SamplerPolicy fmt = FmtSampler{ThresholdVector::zeros(2)};
    const SamplerPolicy smt = SmtSampler{{PiecewiseFn::constant(0), PiecewiseFn::constant(0)}};
    CHECK_NOTHROW(check_compatible(np, MafScheduler{}, fmt));
    CHECK_NOTHROW(check_compatible(p, MafScheduler{}, smt));
    CHECK_THROWS_AS(check_compatible(p, MafScheduler{}, fmt), PolicyError);
    CHECK_THROWS_AS(check_compatible(np, MafScheduler{}, smt), PolicyError);
    CHECK_THROWS_AS(check_compatible(np, RandomScheduler{FreqVector::uniform(3)}, ZeroWaitSampler{}), PolicyError);
    CHECK_THROWS_AS(check_compatible(np, WrrScheduler{{0, 2}}, ZeroWaitSampler{}), PolicyError);
    CHECK_THROWS_AS(check_compatible(np, MafScheduler{}, FmtSampler{ThresholdVector::zeros(3)}), PolicyError);
}
