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
#include <vector>

#include "paoi/analytic.hpp"
#include "paoi/line_search.hpp"
#include "paoi/system.hpp"

namespace paoi {

// Knots on which sampling functions are represented: `knots` log-spaced
// points from the 1e-4 to the (1 - 1e-4) quantile of T (a single knot when T
// is degenerate).
std::vector<double> make_t_grid(const Distribution& t, std::size_t knots = 64);

struct DinkelbachState {
    std::size_t iteration = 0;
    double c = 0.0;      // fractional parameter used in this iteration
    double p = 0.0;      // p(c) = F(g_c) - c P(g_c)
    bool converged = false;
};

struct DinkelbachResult {
    PiecewiseFn g;
    double c = 0.0;
    std::size_t iterations = 0;
    std::vector<DinkelbachState> history;
};

struct DinkelbachOptions {
    double tolerance = 0.0;      // |p(c)| threshold; <= 0 selects 1e-9 (E[T] + E[C])
    std::size_t max_iters = 50;
    std::size_t knots = 64;
    LineSearchOptions search{};
};

// Optimal sampling function of one source in the preemptive system with the
// frequencies and all other sources' functions held fixed. The source's term
//   (w_m / P_m) { E[Z] / f_m + E[(T+C) 1{delivered}] }
// is a ratio F / P_m, minimized by Dinkelbach's method: p(c) = min_g F - c P_m
// is solved pointwise in T, and c is updated to F / P_m until |p(c)| <= tol.
//
// `coupling` adds kappa * E[min{C, g^m(T)}] to F. The own term ignores that
// g^m also lengthens E[Z] inside every other source's term; solve_p passes the
// first-order size of that effect here when the plain sweep fails to descend.
class SamplerSubproblem {
public:
    struct Candidate {
        PiecewiseFn g;
        double numerator;    // F(g)
        double delivery;     // P_m(g)
        double p;            // F - c P_m
    };

    SamplerSubproblem(const Model& model, FreqVector f, SamplingFunctions g, std::size_t m,
                      DinkelbachOptions opts = {}, double coupling = 0.0);

    // Integrand of F - c P_m at T = t with g(t) = gamma, dropping the parts of
    // F that do not depend on g^m:
    //   w_m [ E[min{C, gamma}] + E[(t + C) 1{C <= gamma + T'}] ] - c P(C <= gamma + T')
    [[nodiscard]] double pointwise_objective(double t, double gamma, double c) const;
    [[nodiscard]] ScalarMin pointwise_argmin(double t, double c) const;

    // F(g) = w_m { E[Z] / f_m + E[(T+C) 1{delivered}] } with the other sources
    // fixed, plus the coupling term when one was given.
    [[nodiscard]] double numerator(const PiecewiseFn& gm) const;
    [[nodiscard]] double numerator(const SamplerMoments& moments) const;
    [[nodiscard]] double delivery(const PiecewiseFn& gm) const;

    [[nodiscard]] Candidate p_of_c(double c) const;
    // Throws NonConvergence when max_iters is exceeded.
    [[nodiscard]] DinkelbachResult solve() const;

    [[nodiscard]] const std::vector<double>& t_grid() const noexcept { return grid_; }
    [[nodiscard]] double gamma_max() const noexcept { return gamma_max_; }
    [[nodiscard]] double tolerance() const noexcept { return tol_; }

private:
    const Model* model_;
    FreqVector f_;
    SamplingFunctions g_;
    std::size_t m_;
    DinkelbachOptions opts_;
    std::vector<double> grid_;
    double gamma_max_;
    double tol_;
    double coupling_;
    double z_others_;  // E[T] + sum_{n != m} f_n E[min{C, g^n(T)}]
};

}  // namespace paoi
