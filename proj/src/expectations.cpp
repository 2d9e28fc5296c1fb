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

#include "paoi/expectations.hpp"

#include <algorithm>
#include <cmath>

#include "paoi/quadrature.hpp"

namespace paoi {
namespace {

// Breakpoints in t where h(gamma + t) is not smooth, given kinks of h at `kinks`.
std::vector<double> shifted(const std::vector<double>& kinks, double gamma) {
    std::vector<double> out;
    for (double k : kinks)
        if (k - gamma > 0.0) out.push_back(k - gamma);
    return out;
}

}  // namespace

double truncated_mean(const Distribution& c, double theta) { return c.truncated_mean(theta); }

double expected_excess(const Distribution& c, const Distribution& t, double theta) {
    if (theta < 0.0) theta = 0.0;
    if (c.is_degenerate()) return t.shortfall(c.mean() - theta);
    if (t.is_degenerate()) return c.stop_loss(theta + t.mean());
    const auto breaks = shifted(c.density_breaks(), theta);
    return quad::expect(t, [&](double x) { return c.stop_loss(theta + x); }, breaks);
}

double success_prob_pointwise(const Distribution& c, const Distribution& t, double gamma) {
    if (gamma < 0.0) gamma = 0.0;
    if (c.is_degenerate()) {
        const double need = c.mean() - gamma;  // delivered iff T >= need
        if (need <= 0.0) return 1.0;
        if (t.is_degenerate()) return t.mean() >= need ? 1.0 : 0.0;
        return t.sf(need);
    }
    if (t.is_degenerate()) return c.cdf(gamma + t.mean());
    const auto breaks = shifted(c.density_breaks(), gamma);
    return quad::expect(t, [&](double x) { return c.cdf(gamma + x); }, breaks);
}

double delivered_partial_mean(const Distribution& c, const Distribution& t, double gamma) {
    if (gamma < 0.0) gamma = 0.0;
    if (c.is_degenerate()) return c.mean() * success_prob_pointwise(c, t, gamma);
    if (t.is_degenerate()) return c.partial_mean(gamma + t.mean());
    const auto breaks = shifted(c.density_breaks(), gamma);
    return quad::expect(t, [&](double x) { return c.partial_mean(gamma + x); }, breaks);
}

double success_prob_slope(const Distribution& c, const Distribution& t, double gamma) {
    if (t.is_degenerate()) return c.pdf(gamma + t.mean());
    const auto breaks = shifted(c.density_breaks(), gamma);
    return quad::expect(t, [&](double x) { return c.pdf(gamma + x); }, breaks);
}

double delivered_partial_slope(const Distribution& c, const Distribution& t, double gamma) {
    if (t.is_degenerate()) return (gamma + t.mean()) * c.pdf(gamma + t.mean());
    const auto breaks = shifted(c.density_breaks(), gamma);
    return quad::expect(t, [&](double x) { return (gamma + x) * c.pdf(gamma + x); }, breaks);
}

DeliveryKernel::DeliveryKernel(Distribution c, Distribution t, std::size_t intervals)
    : c_(std::move(c)), t_(std::move(t)) {
    if (c_.is_degenerate() || t_.is_degenerate() || intervals == 0) return;
    hi_ = c_.quantile(1.0 - 1e-6);
    nodes_.reserve(intervals + 1);
    // Quadratic spacing concentrates nodes near gamma = 0 where C's cdf moves fastest.
    for (std::size_t j = 0; j <= intervals; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(intervals);
        const double g = hi_ * u * u;
        nodes_.push_back({g, success_prob_pointwise(c_, t_, g), success_prob_slope(c_, t_, g),
                          delivered_partial_mean(c_, t_, g), delivered_partial_slope(c_, t_, g)});
    }
}

DeliveryKernel::Values DeliveryKernel::exact(double gamma) const {
    return {success_prob_pointwise(c_, t_, gamma), delivered_partial_mean(c_, t_, gamma)};
}

DeliveryKernel::Values DeliveryKernel::at(double gamma) const {
    if (gamma < 0.0) gamma = 0.0;
    if (nodes_.empty() || gamma >= hi_) return exact(gamma);
    const std::size_t n = nodes_.size() - 1;
    auto j = static_cast<std::size_t>(std::sqrt(gamma / hi_) * static_cast<double>(n));
    j = std::min(j, n - 1);
    while (j > 0 && nodes_[j].gamma > gamma) --j;
    while (j + 1 < n && nodes_[j + 1].gamma <= gamma) ++j;

    const Node& a = nodes_[j];
    const Node& b = nodes_[j + 1];
    const double h = b.gamma - a.gamma;
    const double s = (gamma - a.gamma) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return {h00 * a.s + h10 * h * a.ds + h01 * b.s + h11 * h * b.ds,
            h00 * a.q + h10 * h * a.dq + h01 * b.q + h11 * h * b.dq};
}

}  // namespace paoi
