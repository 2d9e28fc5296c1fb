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

#include "paoi/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "paoi/error.hpp"

namespace paoi {
namespace {

double normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / std::numbers::sqrt2); }
double normal_sf(double z) { return 0.5 * boost::math::erfc(z / std::numbers::sqrt2); }

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

Distribution Distribution::exponential(double rate) {
    require(finite_positive(rate), "exp: rate must be a finite positive number");
    return {Family::Exponential, rate, 0.0};
}

Distribution Distribution::gamma(double shape, double scale) {
    require(finite_positive(shape), "gamma: shape must be a finite positive number");
    require(finite_positive(scale), "gamma: scale must be a finite positive number");
    return {Family::Gamma, shape, scale};
}

Distribution Distribution::pareto(double shape, double scale) {
    require(std::isfinite(shape), "pareto: shape must be finite");
    require(shape > 1.0, "pareto: shape must exceed 1 (shape <= 1 has an infinite mean)");
    require(finite_positive(scale), "pareto: scale must be a finite positive number");
    return {Family::Pareto, shape, scale};
}

Distribution Distribution::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "lognormal: mu must be finite");
    require(finite_positive(sigma), "lognormal: sigma must be a finite positive number");
    return {Family::Lognormal, mu, sigma};
}

Distribution Distribution::deterministic(double value) {
    require(finite_positive(value), "det: value must be a finite positive number");
    return {Family::Deterministic, value, 0.0};
}

Distribution Distribution::parse(std::string_view text) {
    const std::string original(text);
    text = trim(text);
    const auto open = text.find('(');
    if (open == std::string_view::npos || text.back() != ')')
        throw ConfigError("distribution '" + original + "': expected name(key=value,...)");
    const std::string name(trim(text.substr(0, open)));
    std::string_view body = text.substr(open + 1, text.size() - open - 2);

    std::map<std::string, double> params;
    while (!trim(body).empty()) {
        const auto comma = body.find(',');
        const std::string_view item = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("distribution '" + original + "': parameter '" + std::string(item) +
                              "' is not key=value");
        const std::string key(trim(item.substr(0, eq)));
        const std::string_view value_text = trim(item.substr(eq + 1));
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size())
            throw ConfigError("distribution '" + original + "': parameter '" + key +
                              "' is not a number");
        if (!params.emplace(key, value).second)
            throw ConfigError("distribution '" + original + "': duplicate parameter '" + key + "'");
    }

    auto take = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw ConfigError("distribution '" + original + "': missing parameter '" + key + "'");
        const double v = it->second;
        params.erase(it);
        return v;
    };

    auto build = [&]() -> Distribution {
        if (name == "exp") return exponential(take("rate"));
        if (name == "gamma") {
            const double shape = take("shape");
            return gamma(shape, take("scale"));
        }
        if (name == "pareto") {
            const double shape = take("shape");
            return pareto(shape, take("scale"));
        }
        if (name == "lognormal") {
            const double mu = take("mu");
            return lognormal(mu, take("sigma"));
        }
        if (name == "det") return deterministic(take("value"));
        throw ConfigError("distribution '" + original + "': unknown family '" + name +
                          "' (expected exp, gamma, pareto, lognormal or det)");
    };
    Distribution d = [&] {
        try {
            return build();
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            if (msg.rfind("distribution '", 0) == 0) throw;
            throw ConfigError("distribution '" + original + "': " + msg);
        }
    }();
    if (!params.empty())
        throw ConfigError("distribution '" + original + "': unexpected parameter '" +
                          params.begin()->first + "'");
    return d;
}

std::string Distribution::to_string() const {
    switch (family_) {
    case Family::Exponential: return "exp(rate=" + format_number(p1_) + ")";
    case Family::Gamma:
        return "gamma(shape=" + format_number(p1_) + ",scale=" + format_number(p2_) + ")";
    case Family::Pareto:
        return "pareto(shape=" + format_number(p1_) + ",scale=" + format_number(p2_) + ")";
    case Family::Lognormal:
        return "lognormal(mu=" + format_number(p1_) + ",sigma=" + format_number(p2_) + ")";
    case Family::Deterministic: return "det(value=" + format_number(p1_) + ")";
    }
    return {};
}

Distribution Distribution::with_mean(double target_mean) const {
    require(finite_positive(target_mean), "target mean must be a finite positive number");
    switch (family_) {
    case Family::Exponential: return exponential(1.0 / target_mean);
    case Family::Gamma: return gamma(p1_, target_mean / p1_);
    case Family::Pareto: return pareto(p1_, target_mean * (p1_ - 1.0) / p1_);
    case Family::Lognormal: return lognormal(std::log(target_mean) - 0.5 * p2_ * p2_, p2_);
    case Family::Deterministic: return deterministic(target_mean);
    }
    return *this;
}

double Distribution::mean() const noexcept {
    switch (family_) {
    case Family::Exponential: return 1.0 / p1_;
    case Family::Gamma: return p1_ * p2_;
    case Family::Pareto: return p1_ * p2_ / (p1_ - 1.0);
    case Family::Lognormal: return std::exp(p1_ + 0.5 * p2_ * p2_);
    case Family::Deterministic: return p1_;
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    switch (family_) {
    case Family::Exponential: return -std::expm1(-p1_ * x);
    case Family::Gamma: return boost::math::gamma_p(p1_, x / p2_);
    case Family::Pareto: return x <= p2_ ? 0.0 : -std::expm1(p1_ * std::log(p2_ / x));
    case Family::Lognormal: return normal_cdf((std::log(x) - p1_) / p2_);
    case Family::Deterministic: return x >= p1_ ? 1.0 : 0.0;
    }
    return 0.0;
}

double Distribution::sf(double x) const {
    if (x <= 0.0) return 1.0;
    switch (family_) {
    case Family::Exponential: return std::exp(-p1_ * x);
    case Family::Gamma: return boost::math::gamma_q(p1_, x / p2_);
    case Family::Pareto: return x <= p2_ ? 1.0 : std::pow(p2_ / x, p1_);
    case Family::Lognormal: return normal_sf((std::log(x) - p1_) / p2_);
    case Family::Deterministic: return x >= p1_ ? 0.0 : 1.0;
    }
    return 1.0;
}

double Distribution::pdf(double x) const {
    if (x <= 0.0) return 0.0;
    switch (family_) {
    case Family::Exponential: return p1_ * std::exp(-p1_ * x);
    case Family::Gamma: return boost::math::gamma_p_derivative(p1_, x / p2_) / p2_;
    case Family::Pareto: return x < p2_ ? 0.0 : p1_ / x * std::pow(p2_ / x, p1_);
    case Family::Lognormal: {
        const double z = (std::log(x) - p1_) / p2_;
        return std::exp(-0.5 * z * z) / (x * p2_ * std::sqrt(2.0 * std::numbers::pi));
    }
    case Family::Deterministic: return 0.0;
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in [0, 1)");
    if (p == 0.0) return support_min();
    switch (family_) {
    case Family::Exponential: return -std::log1p(-p) / p1_;
    case Family::Gamma: return boost::math::quantile(boost::math::gamma_distribution<>(p1_, p2_), p);
    case Family::Pareto: return p2_ * std::pow(1.0 - p, -1.0 / p1_);
    case Family::Lognormal:
        return boost::math::quantile(boost::math::lognormal_distribution<>(p1_, p2_), p);
    case Family::Deterministic: return p1_;
    }
    return 0.0;
}

double Distribution::partial_mean(double x) const {
    if (x <= 0.0) return 0.0;
    switch (family_) {
    case Family::Exponential: {
        const double u = p1_ * x;
        // (1 - e^{-u}(1 + u)) / rate, written to stay accurate for small u.
        return (-std::expm1(-u) - u * std::exp(-u)) / p1_;
    }
    case Family::Gamma: return p1_ * p2_ * boost::math::gamma_p(p1_ + 1.0, x / p2_);
    case Family::Pareto:
        if (x <= p2_) return 0.0;
        return mean() * -std::expm1((p1_ - 1.0) * std::log(p2_ / x));
    case Family::Lognormal: return mean() * normal_cdf((std::log(x) - p1_ - p2_ * p2_) / p2_);
    case Family::Deterministic: return x >= p1_ ? p1_ : 0.0;
    }
    return 0.0;
}

double Distribution::upper_partial_mean(double x) const {
    if (x <= 0.0) return mean();
    switch (family_) {
    case Family::Exponential: return std::exp(-p1_ * x) * (x + 1.0 / p1_);
    case Family::Gamma: return p1_ * p2_ * boost::math::gamma_q(p1_ + 1.0, x / p2_);
    case Family::Pareto:
        if (x <= p2_) return mean();
        return mean() * std::pow(p2_ / x, p1_ - 1.0);
    case Family::Lognormal: return mean() * normal_sf((std::log(x) - p1_ - p2_ * p2_) / p2_);
    case Family::Deterministic: return x >= p1_ ? 0.0 : p1_;
    }
    return 0.0;
}

double Distribution::truncated_mean(double theta) const {
    if (theta <= 0.0) return 0.0;
    if (std::isinf(theta)) return mean();
    if (family_ == Family::Exponential) return -std::expm1(-p1_ * theta) / p1_;
    if (family_ == Family::Deterministic) return std::min(theta, p1_);
    // Pick the form that avoids cancellation on each side of the median.
    if (cdf(theta) <= 0.5) return partial_mean(theta) + theta * sf(theta);
    return std::max(0.0, mean() - stop_loss(theta));
}

double Distribution::stop_loss(double x) const {
    if (x <= 0.0) return mean() - x;
    if (std::isinf(x)) return 0.0;
    if (family_ == Family::Exponential) return std::exp(-p1_ * x) / p1_;
    if (family_ == Family::Deterministic) return std::max(0.0, p1_ - x);
    if (cdf(x) >= 0.5) return std::max(0.0, upper_partial_mean(x) - x * sf(x));
    return mean() - partial_mean(x) - x * sf(x);
}

double Distribution::shortfall(double x) const {
    if (x <= 0.0) return 0.0;
    if (family_ == Family::Deterministic) return std::max(0.0, x - p1_);
    if (cdf(x) <= 0.5) return std::max(0.0, x * cdf(x) - partial_mean(x));
    return x - mean() + stop_loss(x);
}

double Distribution::support_min() const noexcept {
    switch (family_) {
    case Family::Pareto: return p2_;
    case Family::Deterministic: return p1_;
    default: return 0.0;
    }
}

std::vector<double> Distribution::density_breaks() const {
    if (family_ == Family::Pareto) return {p2_};
    return {};
}

double Distribution::sample(RngStream& rng) const {
    switch (family_) {
    case Family::Exponential: return -std::log(rng.uniform_open()) / p1_;
    case Family::Gamma: {
        boost::random::gamma_distribution<double> dist(p1_, p2_);
        double x = dist(rng);
        while (!(x > 0.0)) x = dist(rng);
        return x;
    }
    case Family::Pareto: return p2_ * std::pow(rng.uniform_open(), -1.0 / p1_);
    case Family::Lognormal: {
        boost::random::normal_distribution<double> normal(p1_, p2_);
        return std::exp(normal(rng));
    }
    case Family::Deterministic: return p1_;
    }
    return 0.0;
}

}  // namespace paoi
