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

#include <string>
#include <string_view>
#include <vector>

#include "paoi/rng.hpp"

namespace paoi {

enum class Family { Exponential, Gamma, Pareto, Lognormal, Deterministic };

// A strictly positive random duration (transmission or computation time).
//
// Parameters are validated on construction so every instance has a finite,
// positive mean. The canonical text form is what configs and CSV output use:
//   exp(rate=1)  gamma(shape=2,scale=0.5)  pareto(shape=2.5,scale=0.6)
//   lognormal(mu=-0.5,sigma=1)  det(value=1)
class Distribution {
public:
    static Distribution exponential(double rate);
    static Distribution gamma(double shape, double scale);
    // Pareto with shape > 1 (finite mean) and minimum value `scale`.
    static Distribution pareto(double shape, double scale);
    static Distribution lognormal(double mu, double sigma);
    static Distribution deterministic(double value);

    // Parses the canonical text form; throws ConfigError with a readable reason.
    static Distribution parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;

    // Same family and shape, rescaled so that mean() == target_mean.
    [[nodiscard]] Distribution with_mean(double target_mean) const;

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] bool is_degenerate() const noexcept {
        return family_ == Family::Deterministic;
    }

    [[nodiscard]] double mean() const noexcept;
    [[nodiscard]] double cdf(double x) const;
    [[nodiscard]] double sf(double x) const;
    // Density; zero everywhere for the degenerate family.
    [[nodiscard]] double pdf(double x) const;
    // Inverse cdf for p in [0, 1); p == 0 returns the lower end of the support.
    [[nodiscard]] double quantile(double p) const;

    // E[X * 1{X <= x}]
    [[nodiscard]] double partial_mean(double x) const;
    // E[X * 1{X > x}]
    [[nodiscard]] double upper_partial_mean(double x) const;
    // E[min{X, theta}]
    [[nodiscard]] double truncated_mean(double theta) const;
    // E[max{0, X - x}]
    [[nodiscard]] double stop_loss(double x) const;
    // E[max{0, x - X}]
    [[nodiscard]] double shortfall(double x) const;

    // Smallest point of the support.
    [[nodiscard]] double support_min() const noexcept;
    // Points where the density jumps (integration breakpoints).
    [[nodiscard]] std::vector<double> density_breaks() const;

    [[nodiscard]] double sample(RngStream& rng) const;

    [[nodiscard]] double param1() const noexcept { return p1_; }
    [[nodiscard]] double param2() const noexcept { return p2_; }

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    Distribution(Family family, double p1, double p2) : family_(family), p1_(p1), p2_(p2) {}

    Family family_;
    double p1_;  // rate | shape | shape | mu | value
    double p2_;  // unused | scale | scale | sigma | unused
};

// Shortest round-trip decimal text for a double.
std::string format_number(double value);

}  // namespace paoi
