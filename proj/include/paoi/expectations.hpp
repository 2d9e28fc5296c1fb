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

#include <memory>
#include <vector>

#include "paoi/distribution.hpp"

namespace paoi {

// Expectations over independent computation time C and transmission time T
// that the peak-age formulas are built from. All are exact closed forms or a
// single adaptive quadrature over T.

// E[min{C, theta}]
double truncated_mean(const Distribution& c, double theta);

// E[max{0, C - theta - T}]
double expected_excess(const Distribution& c, const Distribution& t, double theta);

// P(C <= gamma + T)
double success_prob_pointwise(const Distribution& c, const Distribution& t, double gamma);

// E[C * 1{C <= gamma + T}]
double delivered_partial_mean(const Distribution& c, const Distribution& t, double gamma);

// Derivatives in gamma of the two functions above (continuous C only).
double success_prob_slope(const Distribution& c, const Distribution& t, double gamma);
double delivered_partial_slope(const Distribution& c, const Distribution& t, double gamma);

// Evaluates (P(C <= gamma + T), E[C 1{C <= gamma + T}]) for many gamma.
//
// When both C and T are continuous the two functions are smooth in gamma and
// are served from a cubic Hermite table (values and slopes from quadrature)
// on [0, quantile_C(1 - 1e-6)]; outside that range, or when either variable
// is degenerate, the exact routines are called.
class DeliveryKernel {
public:
    struct Values {
        double success;
        double partial;
    };

    DeliveryKernel(Distribution c, Distribution t, std::size_t intervals = 1024);

    [[nodiscard]] Values at(double gamma) const;
    [[nodiscard]] Values exact(double gamma) const;
    [[nodiscard]] bool tabulated() const noexcept { return !nodes_.empty(); }
    [[nodiscard]] double table_end() const noexcept { return hi_; }

    [[nodiscard]] const Distribution& c() const noexcept { return c_; }
    [[nodiscard]] const Distribution& t() const noexcept { return t_; }

private:
    struct Node {
        double gamma, s, ds, q, dq;
    };

    Distribution c_;
    Distribution t_;
    double hi_ = 0.0;
    std::vector<Node> nodes_;
};

}  // namespace paoi
