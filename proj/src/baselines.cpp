#include "covar/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "covar/quantile.hpp"

namespace covar {

double estimate_var(std::span<const double> y, double beta) {
    return sample_quantile(y, beta);
}

std::size_t default_batch_count(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

double estimate_covar_batching(const JointSample& sample, double alpha, double beta,
                               std::size_t k) {
    if (sample.m() != 1) {
        throw std::invalid_argument(
            "estimate_covar_batching: only a univariate condition is supported");
    }
    if (k < 1 || k > sample.n()) {
        throw std::invalid_argument("estimate_covar_batching: k must lie in [1, n]");
    }
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
        throw std::domain_error("estimate_covar_batching: alpha, beta must lie in (0,1)");
    }

    const std::size_t batch = sample.n() / k; // remainder rows are discarded
    const std::size_t pick = quantile_index(alpha, batch);

    std::vector<std::pair<double, double>> pairs(batch);
    std::vector<double> recorded(k);
    for (std::size_t b = 0; b < k; ++b) {
        const std::size_t base = b * batch;
        for (std::size_t i = 0; i < batch; ++i) {
            pairs[i] = {sample.x(base + i, 0), sample.y()[base + i]};
        }
        std::nth_element(pairs.begin(), pairs.begin() + (pick - 1), pairs.end(),
                         [](const auto& a, const auto& b2) { return a.first < b2.first; });
        recorded[b] = pairs[pick - 1].second;
    }
    return sample_quantile(recorded, beta);
}

namespace {

JointSample project_univariate(const JointSample& sample, std::size_t column) {
    return JointSample(sample.n(), 1, sample.x_column(column), sample.y());
}

} // namespace

double estimate_measure(const JointSample& sample, MeasureKind kind,
                        std::span<const double> alpha, double beta,
                        const BandwidthRule& rule, KernelSpec spec) {
    if (sample.m() != 2) {
        throw std::invalid_argument("estimate_measure: expects an m = 2 sample");
    }
    if (alpha.size() != 2) {
        throw std::invalid_argument("estimate_measure: expects two alpha levels");
    }

    switch (kind) {
        case MeasureKind::multivariate: {
            const QuantileVector q = step1_quantiles(sample, alpha);
            const BandwidthVector bw = bandwidths_for(rule, sample.n(), 2);
            return estimate_covar_at(sample, q.q, bw, spec, beta);
        }
        case MeasureKind::var_only:
            return estimate_var(sample.y(), beta);
        case MeasureKind::univariate_x1:
        case MeasureKind::univariate_x2: {
            const std::size_t col = kind == MeasureKind::univariate_x1 ? 0 : 1;
            const JointSample sub = project_univariate(sample, col);
            const double a[] = {alpha[col]};
            const QuantileVector q = step1_quantiles(sub, a);
            const BandwidthVector bw = bandwidths_for(rule, sub.n(), 1);
            return estimate_covar_at(sub, q.q, bw, spec, beta);
        }
        case MeasureKind::aggregate: {
            // Condition on X1 + X2 at the sum of the two separate quantiles,
            // supplied to step 2 as an explicit conditioning point.
            const double level = sample_quantile(sample.x_column(0), alpha[0]) +
                                 sample_quantile(sample.x_column(1), alpha[1]);
            std::vector<double> agg(sample.n());
            for (std::size_t i = 0; i < sample.n(); ++i) {
                agg[i] = sample.x(i, 0) + sample.x(i, 1);
            }
            const JointSample sub(sample.n(), 1, std::move(agg), sample.y());
            const BandwidthVector bw = bandwidths_for(rule, sub.n(), 1);
            const double point[] = {level};
            return estimate_covar_at(sub, point, bw, spec, beta);
        }
    }
    throw std::invalid_argument("estimate_measure: unknown measure kind");
}

} // namespace covar
