#include "covar/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "covar/errors.hpp"
#include "covar/normal.hpp"

namespace covar {

namespace {

void check_probability(double p, const char* name) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
    }
}

double sample_sd(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double a : v) ss += (a - mean) * (a - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

/// sigma_Y plug-in from already-computed weights at the conditioning point.
double sigma_from_weights(const JointSample& sample, const WeightComputation& wc,
                          double covar_hat, const BandwidthVector& bw, KernelSpec spec,
                          double beta) {
    const auto n = static_cast<double>(sample.n());
    const double delta_prod = bw.product();

    const double fx_hat = std::exp(wc.log_total) / (n * delta_prod);
    if (!(fx_hat > 0.0) || !std::isfinite(fx_hat)) {
        throw DegenerateDensityError("sigma_y: marginal density estimate is nonpositive");
    }

    const double delta_y = sample_sd(sample.y()) * std::pow(n, -0.2);
    if (!(delta_y > 0.0)) {
        throw DegenerateDensityError("sigma_y: Y sample has zero spread");
    }

    // f_{Y|X}(c|q) = f(q,c)/f_X(q) reduces to a weighted KDE of Y at c.
    const auto& y = sample.y();
    double cond = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        cond += wc.w[i] * kernel_eval(spec, (covar_hat - y[i]) / delta_y);
    }
    const double f_cond = cond / delta_y;
    if (!(f_cond > 0.0) || !std::isfinite(f_cond)) {
        throw DegenerateDensityError("sigma_y: conditional density estimate is nonpositive");
    }

    const double roughness = std::pow(kernel_square_integral(spec),
                                      static_cast<double>(sample.m()));
    const double var = beta * (1.0 - beta) / (fx_hat * f_cond * f_cond) * roughness;
    return std::sqrt(var);
}

double effective_sample_size(const std::vector<double>& w) {
    double ss = 0.0;
    for (double wi : w) ss += wi * wi;
    return ss > 0.0 ? 1.0 / ss : 0.0;
}

} // namespace

BandwidthRule BandwidthRule::power_gamma_rule(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) {
        throw ConfigError("bandwidth.gamma: must lie in (0,2)");
    }
    BandwidthRule r;
    r.kind = Kind::power_gamma;
    r.gamma = gamma;
    return r;
}

BandwidthRule BandwidthRule::power_optimal_rule() {
    BandwidthRule r;
    r.kind = Kind::power_optimal;
    return r;
}

BandwidthRule BandwidthRule::explicit_rule(std::vector<double> delta) {
    BandwidthRule r;
    r.kind = Kind::explicit_;
    r.delta = std::move(delta);
    return r;
}

BandwidthVector bandwidths_for(const BandwidthRule& rule, std::size_t n, std::size_t m) {
    if (n < 2) throw ConfigError("bandwidths_for: n must be >= 2");
    if (m < 1) throw ConfigError("bandwidths_for: m must be >= 1");
    switch (rule.kind) {
        case BandwidthRule::Kind::explicit_: {
            if (rule.delta.size() != m) {
                throw ConfigError("bandwidth.delta: expected one entry per condition dimension");
            }
            return BandwidthVector(rule.delta);
        }
        case BandwidthRule::Kind::power_gamma: {
            if (!(rule.gamma > 0.0 && rule.gamma < 2.0)) {
                throw ConfigError("bandwidth.gamma: must lie in (0,2)");
            }
            const double e = 1.0 / (static_cast<double>(m) + 4.0 - rule.gamma);
            const double b = std::pow(static_cast<double>(n), -e);
            return BandwidthVector(std::vector<double>(m, b));
        }
        case BandwidthRule::Kind::power_optimal: {
            const double e = 1.0 / (static_cast<double>(m) + 4.0);
            const double b = std::pow(static_cast<double>(n), -e);
            return BandwidthVector(std::vector<double>(m, b));
        }
    }
    throw ConfigError("bandwidths_for: unknown rule");
}

double conditional_cdf(const JointSample& sample, std::span<const double> point, double y,
                       const BandwidthVector& bw, KernelSpec spec) {
    const auto wc = compute_weights(sample, point, bw, spec);
    const auto& ys = sample.y();
    double acc = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] <= y) acc += wc.w[i];
    }
    return std::clamp(acc, 0.0, 1.0);
}

double estimate_covar_at(const JointSample& sample, std::span<const double> point,
                         const BandwidthVector& bw, KernelSpec spec, double beta) {
    check_probability(beta, "beta");
    const auto wc = compute_weights(sample, point, bw, spec);
    return weighted_quantile(sample.y(), wc.w, beta);
}

CoVaREstimate estimate_covar(const JointSample& sample, std::span<const double> alpha,
                             double beta, const BandwidthRule& rule, KernelSpec spec,
                             double nu) {
    for (double a : alpha) check_probability(a, "alpha");
    check_probability(beta, "beta");
    check_probability(nu, "nu");

    QuantileVector q_hat = step1_quantiles(sample, alpha);
    BandwidthVector bw = bandwidths_for(rule, sample.n(), sample.m());
    const auto wc = compute_weights(sample, q_hat.q, bw, spec);
    const double point = weighted_quantile(sample.y(), wc.w, beta);
    const double sigma = sigma_from_weights(sample, wc, point, bw, spec, beta);

    const double z = normal_inverse_cdf(1.0 - nu / 2.0);
    const double half_width =
        z * sigma / std::sqrt(static_cast<double>(sample.n()) * bw.product());

    CoVaREstimate est{point,
                      point - half_width,
                      point + half_width,
                      nu,
                      sigma,
                      std::move(q_hat),
                      std::move(bw),
                      sample.n(),
                      effective_sample_size(wc.w)};
    return est;
}

double estimate_sigma_y(const JointSample& sample, const QuantileVector& q_hat,
                        double covar_hat, const BandwidthVector& bw, KernelSpec spec,
                        double beta) {
    check_probability(beta, "beta");
    if (!std::isfinite(covar_hat)) {
        throw std::invalid_argument("sigma_y: covar_hat must be finite");
    }
    const auto wc = compute_weights(sample, q_hat.q, bw, spec);
    return sigma_from_weights(sample, wc, covar_hat, bw, spec, beta);
}

double delta_covar(const JointSample& sample, std::span<const double> alpha, double beta,
                   const BandwidthRule& rule, KernelSpec spec) {
    for (double a : alpha) {
        if (!(a >= 0.5 && a < 1.0)) {
            throw std::domain_error("delta_covar: alpha entries must lie in [0.5, 1)");
        }
    }
    check_probability(beta, "beta");

    const BandwidthVector bw = bandwidths_for(rule, sample.n(), sample.m());
    const auto point_at = [&](std::span<const double> a) {
        QuantileVector q = step1_quantiles(sample, a);
        return estimate_covar_at(sample, q.q, bw, spec, beta);
    };
    const std::vector<double> median(sample.m(), 0.5);
    return point_at(alpha) - point_at(median);
}

} // namespace covar
