#ifndef COVAR_BASELINES_HPP
#define COVAR_BASELINES_HPP

#include <cstddef>
#include <span>

#include "covar/estimator.hpp"
#include "covar/simulation.hpp"

namespace covar {

/// The alternative risk measures compared on a two-condition sample:
///   multivariate   - CoVaR conditioned on both X_1 and X_2 (measure i)
///   var_only       - plain VaR of Y, no condition (ii)
///   univariate_x1  - CoVaR conditioned on X_1 alone (iii)
///   univariate_x2  - CoVaR conditioned on X_2 alone (iv)
///   aggregate      - CoVaR conditioned on X_1 + X_2 at the summed
///                    quantile level q_{1,a1} + q_{2,a2} (v)
enum class MeasureKind { multivariate, var_only, univariate_x1, univariate_x2, aggregate };

/// Unconditional value-at-risk: the ceil(beta*n)-th order statistic of y.
double estimate_var(std::span<const double> y, double beta);

/// Batching estimator for a univariate condition (m = 1).
///
/// The n pairs are split into k contiguous batches of floor(n/k) rows
/// (remainder discarded). Each batch contributes the Y paired with its
/// ceil(alpha*batch)-th X order statistic; the estimate is the
/// ceil(beta*k)-th order statistic of those k values. Both steps use
/// order statistics only, so no bandwidth is involved.
/// Throws std::invalid_argument for m != 1 or k outside [1, n].
double estimate_covar_batching(const JointSample& sample, double alpha, double beta,
                               std::size_t k);

/// Number of batches ceil(sqrt(n)) used by the batching baseline studies.
std::size_t default_batch_count(std::size_t n);

/// One of the five comparison measures on an m = 2 sample. The conditional
/// measures reuse the two-step machinery on the relevant (sub-)sample; the
/// aggregate measure runs step 2 at the explicitly supplied level.
double estimate_measure(const JointSample& sample, MeasureKind kind,
                        std::span<const double> alpha, double beta,
                        const BandwidthRule& rule, KernelSpec spec);

} // namespace covar

#endif // COVAR_BASELINES_HPP
