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

// Reference computations the tests compare the library against. They use
// only the standard library's random engines and distributions and plain
// numerical methods, so they share no code path with what they check.

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "paoi/distribution.hpp"

namespace oracle {

using Engine = std::mt19937_64;
using Sampler = std::function<double(Engine&)>;

// Draws from `d` through <random>, independent of Distribution::sample.
Sampler sampler_for(const paoi::Distribution& d);

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;

    // |mean - value| <= k standard errors (plus a hair for exact zeros).
    [[nodiscard]] bool agrees(double value, double k = 3.0) const;
};

// Sample mean and standard error of fn(engine) over n independent draws.
Estimate monte_carlo(std::size_t n, std::uint64_t seed, const std::function<double(Engine&)>& fn);

// Running mean/variance accumulator for several statistics of one sample.
class Moments {
public:
    explicit Moments(std::size_t k) : sum_(k, 0.0), sq_(k, 0.0) {}
    void add(std::size_t i, double x) {
        sum_[i] += x;
        sq_[i] += x * x;
    }
    void next() { ++n_; }
    [[nodiscard]] Estimate get(std::size_t i) const;

private:
    std::vector<double> sum_, sq_;
    std::size_t n_ = 0;
};

// Argmin of fn over n equally spaced points in [lo, hi] (first one on ties).
std::pair<double, double> dense_argmin(const std::function<double(double)>& fn, double lo, double hi,
                                       std::size_t n);

// Euclidean projection onto {x : sum x = 1, x_i >= floor}.
std::vector<double> project_simplex(std::vector<double> y, double floor);

// Projected gradient descent with central-difference gradients and
// backtracking, started from x0. Stops when a step moves less than `tol`.
std::vector<double> simplex_minimize(const std::function<double(const std::vector<double>&)>& fn,
                                     std::vector<double> x0, double floor = 1e-6, double tol = 1e-12,
                                     std::size_t max_iters = 20000);

}  // namespace oracle
