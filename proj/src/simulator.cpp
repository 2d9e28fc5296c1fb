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

#include "paoi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paoi/error.hpp"
#include "paoi/rng.hpp"

namespace paoi {
namespace {

struct Draw {
    double t;
    double c;
    double u;  // scheduler randomness of this packet
};

class Engine {
public:
    Engine(const SystemConfig& config, const SchedulerPolicy& scheduler, const SamplerPolicy& sampler,
           const SimOptions& opts)
        : config_(config),
          scheduler_(scheduler),
          sampler_(sampler),
          opts_(opts),
          root_(opts.seed),
          M_(config.sources()),
          last_gen_(M_),
          peaks_(M_),
          stats_(M_),
          wait_sum_(M_, 0.0) {}

    SimResult run() {
        if (config_.mode == ServerMode::NonPreemptive)
            run_non_preemptive();
        else
            run_preemptive();
        return finish();
    }

private:
    struct Peak {
        double value;
        std::size_t packet;
    };

    // Every packet owns a child stream, so its draws do not depend on how
    // many variates earlier packets consumed.
    Draw draw(std::size_t i) const {
        RngStream rng = root_.split(i);
        const double t = config_.t_dist.sample(rng);
        const double c = config_.c_dist.sample(rng);
        return {t, c, rng.uniform()};
    }

    std::size_t choose(std::size_t i, double now, double u) const {
        if (const auto* r = std::get_if<RandomScheduler>(&scheduler_)) {
            double acc = 0.0;
            for (std::size_t m = 0; m + 1 < M_; ++m) {
                acc += r->f[m];
                if (u < acc) return m;
            }
            return M_ - 1;
        }
        if (const auto* w = std::get_if<WrrScheduler>(&scheduler_))
            return w->sequence[(i - 1) % w->sequence.size()];
        std::size_t best = 0;
        for (std::size_t m = 1; m < M_; ++m)
            if (now - last_gen_[m] > now - last_gen_[best]) best = m;
        return best;
    }

    double threshold(std::size_t m) const {
        if (const auto* fmt = std::get_if<FmtSampler>(&sampler_)) return fmt->theta[m];
        return 0.0;
    }

    double sampling_delay(std::size_t m, double t) const {
        if (const auto* smt = std::get_if<SmtSampler>(&sampler_)) return smt->g[m](t);
        return 0.0;
    }

    static double slack(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

    void start(double t0, double c0) {
        std::fill(last_gen_.begin(), last_gen_.end(), -(t0 + c0));
        if (opts_.record_trace)
            out_.trace.push_back({0, -(t0 + c0), t0, 0.0, c0, 0.0, true});
    }

    void generated(std::size_t i, std::size_t m, double s, const Draw& d, double wait, double r,
                   bool delivered) {
        ++stats_[m].generated;
        wait_sum_[m] += wait;
        if (delivered) {
            // Peak age at delivery, computed directly and as X + A.
            const double peak = r - last_gen_[m];
            const double split = (s - last_gen_[m]) + (r - s);
            if (std::abs(peak - split) > slack(r))
                throw Error("simulator: peak age mismatch at packet " + std::to_string(i));
            peaks_[m].push_back({peak, i});
            last_gen_[m] = s;
            ++stats_[m].delivered;
        } else {
            ++stats_[m].dropped;
        }
        if (opts_.record_trace) out_.trace.push_back({m, s, d.t, wait, d.c, r, delivered});
    }

    void check_cycle(std::size_t i, double s, double s_next, const Draw& d, double wait) const {
        if (s_next - s > d.t + wait + d.c + slack(s_next))
            throw Error("simulator: inter-generation time exceeds T + W + C at packet " +
                        std::to_string(i));
    }

    void run_non_preemptive() {
        const std::size_t n = opts_.n_packets;
        const Draw d0 = draw(0);
        start(d0.t, d0.c);

        double service_start = -d0.c;  // of the previous packet
        double busy_until = 0.0;
        Draw next = draw(1);
        std::size_t m_next = choose(1, service_start, next.u);
        double s_next = service_start + std::min(d0.c, threshold(m_next));
        first_gen_ = s_next;

        for (std::size_t i = 1; i <= n; ++i) {
            const Draw d = next;
            const std::size_t m = m_next;
            const double s = s_next;
            const double arrival = s + d.t;
            if (arrival < service_start)
                throw Error("simulator: server queue exceeded one packet at packet " + std::to_string(i));
            const double begin = std::max(arrival, busy_until);
            const double wait = begin - arrival;
            const double r = begin + d.c;

            // The next source is fixed when this packet enters service, before
            // its own delivery reaches the destination.
            next = draw(i + 1);
            m_next = choose(i + 1, begin, next.u);
            s_next = begin + std::min(d.c, threshold(m_next));
            check_cycle(i, s, s_next, d, wait);

            generated(i, m, s, d, wait, r, true);
            service_start = begin;
            busy_until = r;
        }
        last_gen_time_ = s_next;
    }

    void run_preemptive() {
        const std::size_t n = opts_.n_packets;
        const Draw d0 = draw(0);
        start(d0.t, d0.c);

        // The initial packet completes before the first generation at time 0.
        Draw next = draw(1);
        std::size_t m_next = choose(1, 0.0, next.u);
        double s_next = 0.0;
        first_gen_ = s_next;

        for (std::size_t i = 1; i <= n; ++i) {
            const Draw d = next;
            const std::size_t m = m_next;
            const double s = s_next;
            const double arrival = s + d.t;
            const double r = arrival + d.c;
            const double hold = std::min(d.c, sampling_delay(m, d.t));
            s_next = arrival + hold;
            check_cycle(i, s, s_next, d, 0.0);

            next = draw(i + 1);
            // Packet i survives if it finishes before packet i+1 arrives.
            const bool delivered = d.c <= hold + next.t;
            const bool before_decision = delivered && d.c <= hold;
            if (before_decision) generated(i, m, s, d, 0.0, r, true);
            m_next = choose(i + 1, s_next, next.u);
            if (!before_decision) generated(i, m, s, d, 0.0, r, delivered);
        }
        last_gen_time_ = s_next;
    }

    SimResult finish() {
        const std::size_t n = opts_.n_packets;
        const std::size_t B = std::max<std::size_t>(opts_.batches, 2);
        std::vector<std::vector<double>> batch_sum(B, std::vector<double>(M_, 0.0));
        std::vector<std::vector<std::size_t>> batch_count(B, std::vector<std::size_t>(M_, 0));

        out_.sources.resize(M_);
        for (std::size_t m = 0; m < M_; ++m) {
            SourceStats& st = out_.sources[m];
            st = stats_[m];
            const auto skip = static_cast<std::size_t>(
                std::ceil(opts_.warmup_fraction * static_cast<double>(peaks_[m].size())));
            const std::size_t kept = peaks_[m].size() - std::min(skip, peaks_[m].size());
            if (kept < opts_.min_deliveries)
                throw InsufficientDeliveries("source " + std::to_string(m) + " delivered " +
                                             std::to_string(kept) + " packets after warmup (need " +
                                             std::to_string(opts_.min_deliveries) + ")");
            double sum = 0.0;
            for (std::size_t k = skip; k < peaks_[m].size(); ++k) {
                const Peak& p = peaks_[m][k];
                sum += p.value;
                const std::size_t b = std::min(B - 1, (p.packet - 1) * B / n);
                batch_sum[b][m] += p.value;
                ++batch_count[b][m];
            }
            st.mean_peak = sum / static_cast<double>(kept);
            st.realized_freq = static_cast<double>(st.generated) / static_cast<double>(n);
            st.mean_wait = st.generated ? wait_sum_[m] / static_cast<double>(st.generated) : 0.0;
            st.delivery_fraction =
                st.generated ? static_cast<double>(st.delivered) / static_cast<double>(st.generated) : 0.0;
            out_.total += config_.weights[m] * st.mean_peak;
        }

        // Batch means over packet-index blocks; a block is used only when every
        // source delivered in it.
        std::vector<double> values;
        for (std::size_t b = 0; b < B; ++b) {
            double v = 0.0;
            bool complete = true;
            for (std::size_t m = 0; m < M_ && complete; ++m) {
                if (batch_count[b][m] == 0)
                    complete = false;
                else
                    v += config_.weights[m] * batch_sum[b][m] / static_cast<double>(batch_count[b][m]);
            }
            if (complete) values.push_back(v);
        }
        if (values.size() >= 2) {
            double mean = 0.0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            const double k = static_cast<double>(values.size());
            out_.stderr_total = std::sqrt(ss / (k - 1.0) / k);
        } else {
            out_.stderr_total = std::numeric_limits<double>::quiet_NaN();
        }
        out_.mean_z = (last_gen_time_ - first_gen_) / static_cast<double>(n);
        return std::move(out_);
    }

    const SystemConfig& config_;
    const SchedulerPolicy& scheduler_;
    const SamplerPolicy& sampler_;
    const SimOptions& opts_;
    RngStream root_;
    std::size_t M_;
    std::vector<double> last_gen_;  // generation time of the last delivered packet
    std::vector<std::vector<Peak>> peaks_;
    std::vector<SourceStats> stats_;
    std::vector<double> wait_sum_;
    double first_gen_ = 0.0;
    double last_gen_time_ = 0.0;
    SimResult out_;
};

}  // namespace

SimResult simulate(const SystemConfig& config, const SchedulerPolicy& scheduler,
                   const SamplerPolicy& sampler, const SimOptions& opts) {
    config.validate();
    check_compatible(config, scheduler, sampler);
    if (opts.n_packets == 0) throw PolicyError("simulate: n_packets must be at least 1");
    if (!(opts.warmup_fraction >= 0.0 && opts.warmup_fraction < 1.0))
        throw PolicyError("simulate: warmup_fraction must lie in [0, 1)");
    return Engine(config, scheduler, sampler, opts).run();
}

}  // namespace paoi
