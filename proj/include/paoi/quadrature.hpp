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

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "paoi/distribution.hpp"

namespace paoi::quad {

// Probability mass left outside the integration range of expect(); every
// expectation computed by quadrature ignores at most this much tail mass.
inline constexpr double kTailMass = 1e-9;
inline constexpr double kRelTol = 1e-10;
inline constexpr unsigned kMaxDepth = 18;

namespace detail {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisects until the Kronrod error estimate drops below an absolute tolerance.
// Boost's own adaptive driver uses a relative test whose roundoff floor can sit
// above the target on narrow panels, which makes it recurse to full depth.
template <class F>
double adapt(F& f, double a, double b, double abs_tol, unsigned depth) {
    double err = 0.0;
    const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
    if (err <= abs_tol || depth == 0) return v;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) return v;
    return adapt(f, a, mid, 0.5 * abs_tol, depth - 1) + adapt(f, mid, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod (15/31) over [a, b], split at every break inside
// the interval so kinks in the integrand land on panel edges. The error
// target is kRelTol times a first-pass estimate of the integral of |f|.
template <class F>
double integrate(F&& f, double a, double b, std::span<const double> breaks = {}) {
    if (!(b > a)) return 0.0;
    std::vector<double> edges{a};
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const std::size_t panels = edges.size() - 1;
    std::vector<double> coarse(panels), errs(panels);
    double l1 = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        double err = 0.0, abs_area = 0.0;
        coarse[i] = detail::Rule::integrate(f, edges[i], edges[i + 1], 0, 0.0, &err, &abs_area);
        errs[i] = err;
        l1 += abs_area;
    }
    const double tol = std::max(kRelTol * l1, 1e-300);
    double total = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        total += errs[i] <= tol ? coarse[i]
                                : detail::adapt(f, edges[i], edges[i + 1], tol, kMaxDepth);
    }
    return total;
}

namespace detail {

template <std::size_t N>
using Vec = std::array<double, N>;

// Gauss-Kronrod 7/15 applied to an integrand with N components at once.
// Returns the Kronrod estimate; `err` gets the largest |Kronrod - Gauss|.
template <std::size_t N, class F>
Vec<N> gk15(F& f, double a, double b, double& err, double& l1) {
    using K = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& x = K::abscissa();
    const auto& wk = K::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Vec<N> kron{}, gauss{};
    l1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool on_gauss = i % 2 == 0;
        const int copies = i == 0 ? 1 : 2;
        for (int side = 0; side < copies; ++side) {
            const Vec<N> v = f(side == 0 ? c + h * x[i] : c - h * x[i]);
            for (std::size_t k = 0; k < N; ++k) {
                kron[k] += wk[i] * v[k];
                if (on_gauss) gauss[k] += wg[i / 2] * v[k];
                l1 += wk[i] * std::abs(v[k]);
            }
        }
    }
    err = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        kron[k] *= h;
        err = std::max(err, std::abs(kron[k] - h * gauss[k]));
    }
    l1 *= std::abs(h);
    return kron;
}

template <std::size_t N, class F>
Vec<N> adapt_n(F& f, double a, double b, double abs_tol, unsigned depth) {
    double err = 0.0, l1 = 0.0;
    const Vec<N> v = gk15<N>(f, a, b, err, l1);
    const double mid = 0.5 * (a + b);
    if (err <= abs_tol || depth == 0 || !(mid > a && mid < b)) return v;
    Vec<N> left = adapt_n<N>(f, a, mid, 0.5 * abs_tol, depth - 1);
    const Vec<N> right = adapt_n<N>(f, mid, b, 0.5 * abs_tol, depth - 1);
    for (std::size_t k = 0; k < N; ++k) left[k] += right[k];
    return left;
}

}  // namespace detail

// integrate() for an integrand returning std::array<double, N>: one adaptive
// pass shared by all components, refined until every component meets the
// tolerance.
template <std::size_t N, class F>
std::array<double, N> integrate_n(F&& f, double a, double b, std::span<const double> breaks = {}) {
    std::array<double, N> total{};
    if (!(b > a)) return total;
    std::vector<double> edges{a};
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const std::size_t panels = edges.size() - 1;
    std::vector<std::array<double, N>> coarse(panels);
    std::vector<double> errs(panels);
    double l1 = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        double panel_l1 = 0.0;
        coarse[i] = detail::gk15<N>(f, edges[i], edges[i + 1], errs[i], panel_l1);
        l1 += panel_l1;
    }
    const double tol = std::max(kRelTol * l1 / static_cast<double>(N), 1e-300);
    for (std::size_t i = 0; i < panels; ++i) {
        const auto part = errs[i] <= tol ? coarse[i]
                                         : detail::adapt_n<N>(f, edges[i], edges[i + 1], tol, kMaxDepth);
        for (std::size_t k = 0; k < N; ++k) total[k] += part[k];
    }
    return total;
}

// Upper integration limit used for a continuous distribution.
inline double upper_limit(const Distribution& d) { return d.quantile(1.0 - kTailMass); }

// E[fn(X)] for X ~ d. The degenerate family is a point evaluation; other
// families integrate fn * pdf over [support_min, quantile(1 - kTailMass)].
template <class F>
double expect(const Distribution& d, F&& fn, std::span<const double> breaks = {}) {
    if (d.is_degenerate()) return fn(d.mean());
    std::vector<double> all(breaks.begin(), breaks.end());
    for (double x : d.density_breaks()) all.push_back(x);
    return integrate([&](double x) { return fn(x) * d.pdf(x); }, d.support_min(), upper_limit(d),
                     all);
}

// expect() for an integrand returning std::array<double, N>.
template <std::size_t N, class F>
std::array<double, N> expect_n(const Distribution& d, F&& fn, std::span<const double> breaks = {}) {
    if (d.is_degenerate()) return fn(d.mean());
    std::vector<double> all(breaks.begin(), breaks.end());
    for (double x : d.density_breaks()) all.push_back(x);
    return integrate_n<N>(
        [&](double x) {
            std::array<double, N> v = fn(x);
            const double p = d.pdf(x);
            for (double& e : v) e *= p;
            return v;
        },
        d.support_min(), upper_limit(d), all);
}

}  // namespace paoi::quad
