#ifndef COVAR_SIMULATION_HPP
#define COVAR_SIMULATION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace covar {

/// Quadratic (delta-gamma) loss model over d independent standard normal
/// risk factors Z_1..Z_d:
///
///   X_j = r_x[j] + sum_k ( p_x[j][k] * Z_k + q_x[j][k] * Z_k^2 )
///   Y   = r_y    + sum_k ( p_y[k]    * Z_k + q_y[k]    * Z_k^2 )
///
/// X_1..X_m are the losses of the conditioning portfolios and Y the loss
/// being measured. p are first-order (delta) and q second-order (gamma)
/// sensitivities.
struct DeltaGammaModel {
    std::size_t m = 0; // conditioning portfolios
    std::size_t d = 0; // risk factors

    std::vector<double> r_x;              // m intercepts
    std::vector<std::vector<double>> p_x; // m x d
    std::vector<std::vector<double>> q_x; // m x d
    double r_y = 0.0;
    std::vector<double> p_y; // d
    std::vector<double> q_y; // d

    /// Throws ConfigError unless m,d >= 1, all containers have consistent
    /// shapes and every coefficient is finite.
    void validate() const;
};

/// An i.i.d. joint loss sample: n rows of (X_1..X_m, Y).
class JointSample {
public:
    /// Takes ownership of the columns; x is row-major n x m.
    /// Throws ConfigError on shape mismatch, empty data or non-finite entries.
    JointSample(std::size_t n, std::size_t m, std::vector<double> x, std::vector<double> y);

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }

    double x(std::size_t i, std::size_t j) const noexcept { return x_[i * m_ + j]; }
    const std::vector<double>& y() const noexcept { return y_; }
    const std::vector<double>& x_data() const noexcept { return x_; }

    /// Copy of conditioning column j.
    std::vector<double> x_column(std::size_t j) const;

private:
    std::size_t n_;
    std::size_t m_;
    std::vector<double> x_; // row-major n x m
    std::vector<double> y_;
};

/// Draws n i.i.d. rows from the model. Row i consumes counters
/// [i*d, (i+1)*d) of the seed's stream, so the same (model, n, seed)
/// triple yields a bit-identical sample on every run and thread count.
JointSample sample_delta_gamma(const DeltaGammaModel& model, std::size_t n, std::uint64_t seed);

} // namespace covar

#endif // COVAR_SIMULATION_HPP
