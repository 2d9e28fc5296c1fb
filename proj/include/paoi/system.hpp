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

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "paoi/distribution.hpp"
#include "paoi/expectations.hpp"

namespace paoi {

enum class ServerMode { NonPreemptive, Preemptive };

std::string to_string(ServerMode mode);
ServerMode parse_server_mode(const std::string& text);

// Sources share one channel and one unit-queue edge server; transmission and
// computation times are i.i.d. across packets and sources.
struct SystemConfig {
    std::vector<double> weights;  // one per source, positive, summing to 1
    Distribution t_dist = Distribution::exponential(1.0);
    Distribution c_dist = Distribution::exponential(1.0);
    ServerMode mode = ServerMode::NonPreemptive;

    [[nodiscard]] std::size_t sources() const noexcept { return weights.size(); }

    // Throws ConfigError naming the offending field.
    void validate() const;

    // Canonical single-line description (stable across runs; used for hashing).
    [[nodiscard]] std::string canonical() const;
};

// 64-bit FNV-1a of SystemConfig::canonical().
std::uint64_t config_hash(const SystemConfig& config);

// Scheduling frequencies of the random scheduler.
class FreqVector {
public:
    // Smallest admissible entry; the peak-age formulas divide by f_m.
    static constexpr double kMinEntry = 1e-6;

    explicit FreqVector(std::vector<double> values);
    static FreqVector uniform(std::size_t sources);

    [[nodiscard]] double operator[](std::size_t m) const { return values_[m]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

// Fixed per-source sampling thresholds (non-preemptive sampler).
class ThresholdVector {
public:
    explicit ThresholdVector(std::vector<double> values);
    static ThresholdVector zeros(std::size_t sources) {
        return ThresholdVector(std::vector<double>(sources, 0.0));
    }

    [[nodiscard]] double operator[](std::size_t m) const { return values_[m]; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

// Nonnegative function of the transmission time, stored as knots with linear
// interpolation between them and constant extension outside the grid.
class PiecewiseFn {
public:
    PiecewiseFn(std::vector<double> grid, std::vector<double> values);
    static PiecewiseFn constant(double value);

    [[nodiscard]] double operator()(double t) const;

    [[nodiscard]] const std::vector<double>& grid() const noexcept { return grid_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] double max_value() const;

    friend bool operator==(const PiecewiseFn&, const PiecewiseFn&) = default;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

using SamplingFunctions = std::vector<PiecewiseFn>;

// A validated configuration plus cached derived quantities shared by the
// evaluators and optimizers. Cheap to copy; the delivery kernel is built on
// first use and shared between copies.
class Model {
public:
    explicit Model(SystemConfig config);

    [[nodiscard]] const SystemConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t sources() const noexcept { return config_.sources(); }
    [[nodiscard]] double weight(std::size_t m) const { return config_.weights[m]; }
    [[nodiscard]] const Distribution& t() const noexcept { return config_.t_dist; }
    [[nodiscard]] const Distribution& c() const noexcept { return config_.c_dist; }
    [[nodiscard]] double mean_t() const noexcept { return mean_t_; }
    [[nodiscard]] double mean_c() const noexcept { return mean_c_; }

    const DeliveryKernel& kernel() const;

private:
    struct KernelSlot {
        std::once_flag once;
        std::unique_ptr<DeliveryKernel> kernel;
    };

    SystemConfig config_;
    double mean_t_;
    double mean_c_;
    std::shared_ptr<KernelSlot> slot_;
};

}  // namespace paoi
