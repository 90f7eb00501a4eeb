#ifndef COVAR_QUANTILE_HPP
#define COVAR_QUANTILE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "covar/simulation.hpp"

namespace covar {

/// Estimated conditioning quantiles: q[j] is the alpha[j]-quantile of X_j.
struct QuantileVector {
    std::vector<double> q;
    std::vector<double> alpha;
};

/// 1-based order-statistic index ceil(alpha*n), clamped to [1, n].
/// Products within a few ulps of an integer are treated as that integer so
/// clean decimal levels (0.9 * 10, 0.8 * 10^6, ...) hit the exact index.
std::size_t quantile_index(double alpha, std::size_t n);

/// The ceil(alpha*n)-th smallest element of data (order-statistic quantile).
/// Throws std::domain_error on empty data or alpha outside (0,1).
double sample_quantile(std::span<const double> data, double alpha);

/// Component-wise order-statistic quantiles of the conditioning columns.
QuantileVector step1_quantiles(const JointSample& sample, std::span<const double> alpha);

/// Quantile of y under normalized weights w.
///
/// Pairs are stably sorted by y ascending; with cumulative weights pi_k in
/// that order, returns the first y whose pi_k exceeds beta. If rounding
/// leaves every pi_k at or below beta, returns the largest y with positive
/// weight. Requires all w >= 0 (throws std::domain_error otherwise) and
/// sum(w) ~ 1.
double weighted_quantile(std::span<const double> y, std::span<const double> w, double beta);

} // namespace covar

#endif // COVAR_QUANTILE_HPP
