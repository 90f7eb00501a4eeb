#ifndef COVAR_ESTIMATOR_HPP
#define COVAR_ESTIMATOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "covar/kernels.hpp"
#include "covar/quantile.hpp"
#include "covar/simulation.hpp"

namespace covar {

/// How the per-dimension bandwidths delta_{n,j} are chosen.
///
/// power_gamma:   delta = n^{-1/(m+4-gamma)}, 0 < gamma < 2. Small gamma
///                favors a fast SD rate (slow bias decay); large gamma the
///                reverse.
/// power_optimal: delta = n^{-1/(m+4)}, the best-rate choice.
/// explicit_:     caller-supplied deltas, one per conditioning dimension.
struct BandwidthRule {
    enum class Kind { power_gamma, power_optimal, explicit_ };

    Kind kind = Kind::power_gamma;
    double gamma = 1.0;
    std::vector<double> delta; // used by explicit_

    static BandwidthRule power_gamma_rule(double gamma);
    static BandwidthRule power_optimal_rule();
    static BandwidthRule explicit_rule(std::vector<double> delta);
};

/// Resolves a bandwidth rule at sample size n and condition dimension m.
/// All power rules use the same exponent in every dimension.
BandwidthVector bandwidths_for(const BandwidthRule& rule, std::size_t n, std::size_t m);

/// Point estimate with its asymptotic confidence interval and diagnostics.
struct CoVaREstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double nu = 0.0;          // CI level complement: 100(1-nu)% interval
    double sigma_y_hat = 0.0; // plug-in asymptotic SD
    QuantileVector q_hat;     // conditioning point used in step 2
    BandwidthVector bandwidths;
    std::size_t n = 0;
    double ess = 0.0; // effective sample size of the weights, 1/sum(w^2)
};

/// Kernel-weighted empirical conditional distribution function
/// F(y | X = point) = sum_i w_i(point) * 1{Y_i <= y}.
double conditional_cdf(const JointSample& sample, std::span<const double> point, double y,
                       const BandwidthVector& bw, KernelSpec spec);

/// Two-step CoVaR estimate.
///
/// Step 1 estimates the conditioning quantiles by order statistics; step 2
/// inverts the kernel-weighted conditional CDF of Y at level beta. The
/// confidence interval is point +- z_{1-nu/2} * sigma_y_hat / sqrt(n*Delta).
CoVaREstimate estimate_covar(const JointSample& sample, std::span<const double> alpha,
                             double beta, const BandwidthRule& rule, KernelSpec spec,
                             double nu);

/// Step 2 alone, at an explicitly supplied conditioning point (used by the
/// aggregate-condition measure). Returns the point estimate only.
double estimate_covar_at(const JointSample& sample, std::span<const double> point,
                         const BandwidthVector& bw, KernelSpec spec, double beta);

/// Plug-in asymptotic standard deviation sigma_Y evaluated at the estimated
/// conditioning point and CoVaR value:
///
///   sigma_Y^2 = beta(1-beta) / ( f_X(q) * f_{Y|X}(c|q)^2 ) * [Int K^2]^m
///
/// with f_X and the joint density replaced by their kernel estimates. The
/// Y-direction bandwidth is sd(Y) * n^{-1/5}. Throws DegenerateDensityError
/// when either density estimate is nonpositive (the point estimate remains
/// valid; only the CI is unavailable).
double estimate_sigma_y(const JointSample& sample, const QuantileVector& q_hat,
                        double covar_hat, const BandwidthVector& bw, KernelSpec spec,
                        double beta);

/// CoVaR increase when the conditioning portfolios move from their median
/// state to the alpha state: point(alpha) - point(0.5,...,0.5), both on the
/// same sample. Requires alpha_j >= 0.5 for all j.
double delta_covar(const JointSample& sample, std::span<const double> alpha, double beta,
                   const BandwidthRule& rule, KernelSpec spec);

} // namespace covar

#endif // COVAR_ESTIMATOR_HPP
