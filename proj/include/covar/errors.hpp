#ifndef COVAR_ERRORS_HPP
#define COVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace covar {

/// Raised when a model, estimator setting, or study configuration is
/// inconsistent (bad shapes, probabilities outside (0,1), gamma out of
/// range, ...). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when every raw kernel weight at the conditioning point is zero:
/// all observations fall outside a compact-support kernel's reach, or the
/// products underflow entirely. Callers may retry with a larger bandwidth
/// or the gaussian family. The CLI maps this to exit code 3.
class DegenerateWeightsError : public std::runtime_error {
public:
    explicit DegenerateWeightsError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a plug-in density estimate is zero or negative, so the
/// asymptotic confidence interval cannot be formed. The point estimate
/// itself is unaffected by this condition.
class DegenerateDensityError : public std::runtime_error {
public:
    explicit DegenerateDensityError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an output file cannot be created or written. The CLI maps
/// this to exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace covar

#endif // COVAR_ERRORS_HPP
