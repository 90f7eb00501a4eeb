#include "covar/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace covar {

std::size_t quantile_index(double alpha, std::size_t n) {
    const double an = alpha * static_cast<double>(n);
    const double nearest = std::round(an);
    const double tol = 8.0 * std::max(an, 1.0) * std::numeric_limits<double>::epsilon();
    double k = (std::fabs(an - nearest) <= tol) ? nearest : std::ceil(an);
    if (k < 1.0) k = 1.0;
    if (k > static_cast<double>(n)) k = static_cast<double>(n);
    return static_cast<std::size_t>(k);
}

double sample_quantile(std::span<const double> data, double alpha) {
    if (data.empty()) throw std::domain_error("sample_quantile: empty data");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("sample_quantile: alpha must lie in (0,1)");
    }
    const std::size_t k = quantile_index(alpha, data.size());
    std::vector<double> v(data.begin(), data.end());
    std::nth_element(v.begin(), v.begin() + (k - 1), v.end());
    return v[k - 1];
}

QuantileVector step1_quantiles(const JointSample& sample, std::span<const double> alpha) {
    if (alpha.size() != sample.m()) {
        throw std::domain_error("step1_quantiles: alpha dimension != sample m");
    }
    QuantileVector qv;
    qv.alpha.assign(alpha.begin(), alpha.end());
    qv.q.resize(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        qv.q[j] = sample_quantile(sample.x_column(j), alpha[j]);
    }
    return qv;
}

double weighted_quantile(std::span<const double> y, std::span<const double> w, double beta) {
    if (y.empty() || y.size() != w.size()) {
        throw std::domain_error("weighted_quantile: y and w must be nonempty and equal-sized");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::domain_error("weighted_quantile: beta must lie in (0,1)");
    }
    const std::size_t n = y.size();
    std::vector<std::pair<double, double>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] < 0.0) throw std::domain_error("weighted_quantile: negative weight");
        pairs[i] = {y[i], w[i]};
    }
    // Stable sort: tied y values keep encounter order; the selected value is
    // the same either way since tied entries are equal.
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    double cum = 0.0;
    double last_positive = pairs.front().first;
    bool seen_positive = false;
    for (const auto& [yi, wi] : pairs) {
        if (wi > 0.0) {
            last_positive = yi;
            seen_positive = true;
        }
        cum += wi;
        if (cum > beta) return yi;
    }
    // Cumulative mass never exceeded beta (floating-point shortfall near 1):
    // return the largest y carrying positive weight, the beta -> 1 limit.
    if (!seen_positive) throw std::domain_error("weighted_quantile: all weights are zero");
    return last_positive;
}

} // namespace covar
