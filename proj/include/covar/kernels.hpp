#ifndef COVAR_KERNELS_HPP
#define COVAR_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "covar/simulation.hpp"

namespace covar {

/// Supported kernel families. All are symmetric probability densities.
/// Gaussian is the default; epanechnikov and uniform have compact support
/// on [-1, 1] for users who want that property.
enum class KernelFamily { gaussian, epanechnikov, uniform };

struct KernelSpec {
    KernelFamily family = KernelFamily::gaussian;
};

KernelFamily kernel_family_from_name(const std::string& name);
std::string kernel_family_name(KernelFamily family);

/// K(t) evaluated at t; nonnegative and symmetric.
double kernel_eval(KernelSpec spec, double t) noexcept;

/// log K(t); -infinity outside a compact kernel's support.
double kernel_log_eval(KernelSpec spec, double t) noexcept;

/// Closed-form value of the roughness integral of K^2 over the real line.
double kernel_square_integral(KernelSpec spec) noexcept;

/// Per-dimension smoothing bandwidths for the conditioning coordinates.
struct BandwidthVector {
    std::vector<double> delta;

    explicit BandwidthVector(std::vector<double> d);

    std::size_t dim() const noexcept { return delta.size(); }

    /// Product of the per-dimension bandwidths.
    double product() const noexcept { return product_; }

private:
    double product_ = 0.0;
};

/// Kernel weights at a conditioning point, kept in a numerically safe form.
///
/// w is normalized to sum to one; log_total is log of the sum of the raw
/// kernel products, so the raw weight of row i is w[i] * exp(log_total).
struct WeightComputation {
    std::vector<double> w;
    double log_total = 0.0;
};

/// Raw product-kernel weights at `point`, prod_j K((point_j - X_ij)/delta_j),
/// normalized to sum to one.
///
/// Computed as exp of summed log-kernel values with the running maximum
/// subtracted before exponentiation, so tail products at large m and n do
/// not underflow. Throws DegenerateWeightsError when every raw weight is
/// zero (all rows outside a compact kernel's reach).
WeightComputation compute_weights(const JointSample& sample, std::span<const double> point,
                                  const BandwidthVector& bw, KernelSpec spec);

/// Normalized weight vector only; see compute_weights.
std::vector<double> product_weights(const JointSample& sample, std::span<const double> point,
                                    const BandwidthVector& bw, KernelSpec spec);

/// Order-independent pairwise sum; error grows like log(n) ulps.
double pairwise_sum(std::span<const double> values) noexcept;

} // namespace covar

#endif // COVAR_KERNELS_HPP
