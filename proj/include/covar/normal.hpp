#ifndef COVAR_NORMAL_HPP
#define COVAR_NORMAL_HPP

namespace covar {

/// Standard normal density phi(x).
double normal_pdf(double x) noexcept;

/// Standard normal distribution function Phi(x), full double precision
/// (computed through erfc).
double normal_cdf(double x) noexcept;

/// Inverse standard normal distribution function Phi^{-1}(p).
///
/// Rational initial guess (Acklam) refined by one Halley step on the
/// erfc-based CDF; absolute error is below 1e-13 across (0,1).
/// Throws std::domain_error unless 0 < p < 1.
double normal_inverse_cdf(double p);

} // namespace covar

#endif // COVAR_NORMAL_HPP
