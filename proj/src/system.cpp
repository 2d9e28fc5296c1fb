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

#include "paoi/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "paoi/error.hpp"

namespace paoi {

std::string to_string(ServerMode mode) {
    return mode == ServerMode::NonPreemptive ? "non_preemptive" : "preemptive";
}

ServerMode parse_server_mode(const std::string& text) {
    if (text == "non_preemptive") return ServerMode::NonPreemptive;
    if (text == "preemptive") return ServerMode::Preemptive;
    throw ConfigError("mode: expected 'non_preemptive' or 'preemptive', got '" + text + "'");
}

void SystemConfig::validate() const {
    if (weights.empty()) throw ConfigError("weights: at least one source is required");
    for (std::size_t m = 0; m < weights.size(); ++m) {
        if (!(std::isfinite(weights[m]) && weights[m] > 0.0))
            throw ConfigError("weights[" + std::to_string(m) + "]: must be a positive number");
    }
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("weights: must sum to 1 (got " + format_number(sum) + ")");
}

std::string SystemConfig::canonical() const {
    std::string out = "mode=" + to_string(mode) + ";T=" + t_dist.to_string() +
                      ";C=" + c_dist.to_string() + ";w=";
    for (std::size_t m = 0; m < weights.size(); ++m) {
        if (m) out += ',';
        out += format_number(weights[m]);
    }
    return out;
}

std::uint64_t config_hash(const SystemConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config.canonical()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

FreqVector::FreqVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw PolicyError("frequency vector is empty");
    for (std::size_t m = 0; m < values_.size(); ++m) {
        if (!std::isfinite(values_[m]) || values_[m] < kMinEntry)
            throw PolicyError("frequency f[" + std::to_string(m) + "] = " +
                              format_number(values_[m]) + " is below the admissible floor 1e-6");
    }
    const double sum = std::accumulate(values_.begin(), values_.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-10)
        throw PolicyError("frequency vector must sum to 1 (got " + format_number(sum) + ")");
}

FreqVector FreqVector::uniform(std::size_t sources) {
    return FreqVector(std::vector<double>(sources, 1.0 / static_cast<double>(sources)));
}

ThresholdVector::ThresholdVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t m = 0; m < values_.size(); ++m) {
        if (std::isnan(values_[m]) || values_[m] < 0.0)
            throw PolicyError("threshold theta[" + std::to_string(m) + "] must be >= 0");
    }
}

PiecewiseFn::PiecewiseFn(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.empty() || grid_.size() != values_.size())
        throw PolicyError("sampling function needs matching, nonempty grid and values");
    for (std::size_t j = 0; j < grid_.size(); ++j) {
        if (std::isnan(values_[j]) || values_[j] < 0.0)
            throw PolicyError("sampling function values must be >= 0");
        if (j > 0 && !(grid_[j] > grid_[j - 1]))
            throw PolicyError("sampling function grid must be strictly increasing");
    }
}

PiecewiseFn PiecewiseFn::constant(double value) { return PiecewiseFn({0.0}, {value}); }

double PiecewiseFn::operator()(double t) const {
    if (t <= grid_.front()) return values_.front();
    if (t >= grid_.back()) return values_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
    const double w = (t - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

bool PiecewiseFn::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double PiecewiseFn::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

Model::Model(SystemConfig config)
    : config_(std::move(config)),
      mean_t_(config_.t_dist.mean()),
      mean_c_(config_.c_dist.mean()),
      slot_(std::make_shared<KernelSlot>()) {
    config_.validate();
}

const DeliveryKernel& Model::kernel() const {
    std::call_once(slot_->once, [this] {
        slot_->kernel = std::make_unique<DeliveryKernel>(config_.c_dist, config_.t_dist);
    });
    return *slot_->kernel;
}

}  // namespace paoi
