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

#include "paoi/dinkelbach.hpp"

#include <cmath>

#include "paoi/analytic.hpp"
#include "paoi/error.hpp"

namespace paoi {

std::vector<double> make_t_grid(const Distribution& t, std::size_t knots) {
    const double lo = t.quantile(1e-4);
    const double hi = t.quantile(1.0 - 1e-4);
    if (t.is_degenerate() || knots < 2 || !(hi > lo)) return {t.quantile(0.5)};
    std::vector<double> grid(knots);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (std::size_t j = 0; j < knots; ++j) {
        const double u = static_cast<double>(j) / static_cast<double>(knots - 1);
        grid[j] = std::exp(log_lo + u * (log_hi - log_lo));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

SamplerSubproblem::SamplerSubproblem(const Model& model, FreqVector f, SamplingFunctions g,
                                     std::size_t m, DinkelbachOptions opts, double coupling)
    : model_(&model),
      f_(std::move(f)),
      g_(std::move(g)),
      m_(m),
      opts_(opts),
      grid_(make_t_grid(model.t(), opts.knots)),
      gamma_max_(model.c().quantile(1.0 - 1e-6)),
      tol_(opts.tolerance > 0.0 ? opts.tolerance : 1e-9 * (model.mean_t() + model.mean_c())),
      coupling_(coupling) {
    if (model.config().mode != ServerMode::Preemptive)
        throw PolicyError("SamplerSubproblem: requires a preemptive configuration");
    if (f_.size() != model.sources() || g_.size() != model.sources())
        throw PolicyError("SamplerSubproblem: f and g must have one entry per source");
    if (m_ >= model.sources()) throw PolicyError("SamplerSubproblem: source index out of range");
    if (!(coupling_ >= 0.0)) throw PolicyError("SamplerSubproblem: coupling must be nonnegative");
    z_others_ = model.mean_t();
    for (std::size_t n = 0; n < g_.size(); ++n)
        if (n != m_) z_others_ += f_[n] * sampler_moments(model, g_[n]).truncated;
}

double SamplerSubproblem::pointwise_objective(double t, double gamma, double c) const {
    const auto v = model_->kernel().at(gamma);
    const double w = model_->weight(m_);
    return (w + coupling_) * model_->c().truncated_mean(gamma) + w * (t * v.success + v.partial) -
           c * v.success;
}

ScalarMin SamplerSubproblem::pointwise_argmin(double t, double c) const {
    return minimize_on_interval([&](double gamma) { return pointwise_objective(t, gamma, c); }, 0.0,
                                gamma_max_, opts_.search);
}

double SamplerSubproblem::numerator(const SamplerMoments& mo) const {
    const double fm = f_[m_];
    const double mean_z = z_others_ + fm * mo.truncated;
    return model_->weight(m_) * (mean_z / fm + mo.sojourn) + coupling_ * mo.truncated;
}

double SamplerSubproblem::numerator(const PiecewiseFn& gm) const {
    return numerator(sampler_moments(*model_, gm));
}

double SamplerSubproblem::delivery(const PiecewiseFn& gm) const {
    return sampler_moments(*model_, gm).delivery;
}

SamplerSubproblem::Candidate SamplerSubproblem::p_of_c(double c) const {
    std::vector<double> values(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) values[j] = pointwise_argmin(grid_[j], c).x;
    PiecewiseFn g(grid_, std::move(values));
    const SamplerMoments mo = sampler_moments(*model_, g);
    const double num = numerator(mo);
    return {std::move(g), num, mo.delivery, num - c * mo.delivery};
}

DinkelbachResult SamplerSubproblem::solve() const {
    const PiecewiseFn zero(grid_, std::vector<double>(grid_.size(), 0.0));
    const SamplerMoments start = sampler_moments(*model_, zero);
    double c = numerator(start) / start.delivery;

    DinkelbachResult out{zero, c, 0, {}};
    for (std::size_t it = 1; it <= opts_.max_iters; ++it) {
        Candidate cand = p_of_c(c);
        const bool done = std::abs(cand.p) <= tol_;
        out.history.push_back({it, c, cand.p, done});
        out.iterations = it;
        if (done) {
            out.g = std::move(cand.g);
            out.c = c;
            return out;
        }
        c = cand.numerator / cand.delivery;
    }
    throw NonConvergence("Dinkelbach iteration for source " + std::to_string(m_) +
                         " did not reach |p(c)| <= " + format_number(tol_) + " in " +
                         std::to_string(opts_.max_iters) + " iterations");
}

}  // namespace paoi
