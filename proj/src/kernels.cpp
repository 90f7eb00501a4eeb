#include "covar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "covar/errors.hpp"

namespace covar {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kLogInvSqrt2Pi = -0.9189385332046727418; // log(1/sqrt(2*pi))
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

KernelFamily kernel_family_from_name(const std::string& name) {
    if (name == "gaussian") return KernelFamily::gaussian;
    if (name == "epanechnikov") return KernelFamily::epanechnikov;
    if (name == "uniform") return KernelFamily::uniform;
    throw ConfigError("kernel: unknown family '" + name + "'");
}

std::string kernel_family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::gaussian: return "gaussian";
        case KernelFamily::epanechnikov: return "epanechnikov";
        case KernelFamily::uniform: return "uniform";
    }
    return "gaussian";
}

double kernel_eval(KernelSpec spec, double t) noexcept {
    switch (spec.family) {
        case KernelFamily::gaussian:
            return kInvSqrt2Pi * std::exp(-0.5 * t * t);
        case KernelFamily::epanechnikov:
            return std::fabs(t) < 1.0 ? 0.75 * (1.0 - t * t) : 0.0;
        case KernelFamily::uniform:
            return std::fabs(t) <= 1.0 ? 0.5 : 0.0;
    }
    return 0.0;
}

double kernel_log_eval(KernelSpec spec, double t) noexcept {
    switch (spec.family) {
        case KernelFamily::gaussian:
            return kLogInvSqrt2Pi - 0.5 * t * t;
        case KernelFamily::epanechnikov:
            return std::fabs(t) < 1.0 ? std::log(0.75 * (1.0 - t * t)) : kNegInf;
        case KernelFamily::uniform:
            return std::fabs(t) <= 1.0 ? std::log(0.5) : kNegInf;
    }
    return kNegInf;
}

double kernel_square_integral(KernelSpec spec) noexcept {
    switch (spec.family) {
        case KernelFamily::gaussian:
            return 0.28209479177387814; // 1 / (2*sqrt(pi))
        case KernelFamily::epanechnikov:
            return 0.6;
        case KernelFamily::uniform:
            return 0.5;
    }
    return 0.0;
}

BandwidthVector::BandwidthVector(std::vector<double> d) : delta(std::move(d)) {
    if (delta.empty()) throw ConfigError("bandwidths: empty vector");
    product_ = 1.0;
    for (double b : delta) {
        if (!(b > 0.0) || !std::isfinite(b)) {
            throw ConfigError("bandwidths: entries must be positive and finite");
        }
        product_ *= b;
    }
    if (!(product_ > 0.0)) throw ConfigError("bandwidths: product underflowed to zero");
}

double pairwise_sum(std::span<const double> values) noexcept {
    const std::size_t n = values.size();
    if (n <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

WeightComputation compute_weights(const JointSample& sample, std::span<const double> point,
                                  const BandwidthVector& bw, KernelSpec spec) {
    const std::size_t n = sample.n();
    const std::size_t m = sample.m();
    if (point.size() != m) throw ConfigError("weights: point dimension != sample m");
    if (bw.dim() != m) throw ConfigError("weights: bandwidth dimension != sample m");

    std::vector<double> logw(n);
    double max_log = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
        double lw = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            lw += kernel_log_eval(spec, (point[j] - sample.x(i, j)) / bw.delta[j]);
        }
        logw[i] = lw;
        if (lw > max_log) max_log = lw;
    }
    if (!(max_log > kNegInf)) {
        throw DegenerateWeightsError(
            "all kernel weights vanished at the conditioning point; "
            "retry with a larger bandwidth or the gaussian family");
    }

    WeightComputation out;
    out.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.w[i] = std::exp(logw[i] - max_log);
    }
    const double total = pairwise_sum(out.w);
    // total >= 1 because the largest shifted term is exactly exp(0).
    const double inv = 1.0 / total;
    for (double& wi : out.w) wi *= inv;
    out.log_total = max_log + std::log(total);
    return out;
}

std::vector<double> product_weights(const JointSample& sample, std::span<const double> point,
                                    const BandwidthVector& bw, KernelSpec spec) {
    return compute_weights(sample, point, bw, spec).w;
}

} // namespace covar
