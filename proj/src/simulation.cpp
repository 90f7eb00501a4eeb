#include "covar/simulation.hpp"

#include <cmath>
#include <utility>

#include "covar/errors.hpp"
#include "covar/rng.hpp"

namespace covar {

namespace {

bool all_finite(const std::vector<double>& v) {
    for (double a : v) {
        if (!std::isfinite(a)) return false;
    }
    return true;
}

} // namespace

void DeltaGammaModel::validate() const {
    if (m < 1) throw ConfigError("model.m: need at least one conditioning portfolio");
    if (d < 1) throw ConfigError("model.d: need at least one risk factor");
    if (r_x.size() != m) throw ConfigError("model.r_x: expected m entries");
    if (p_x.size() != m) throw ConfigError("model.p_x: expected m rows");
    if (q_x.size() != m) throw ConfigError("model.q_x: expected m rows");
    for (std::size_t j = 0; j < m; ++j) {
        if (p_x[j].size() != d) throw ConfigError("model.p_x: expected d columns per row");
        if (q_x[j].size() != d) throw ConfigError("model.q_x: expected d columns per row");
        if (!all_finite(p_x[j]) || !all_finite(q_x[j])) {
            throw ConfigError("model coefficients must be finite");
        }
    }
    if (p_y.size() != d) throw ConfigError("model.p_y: expected d entries");
    if (q_y.size() != d) throw ConfigError("model.q_y: expected d entries");
    if (!all_finite(r_x) || !all_finite(p_y) || !all_finite(q_y) || !std::isfinite(r_y)) {
        throw ConfigError("model coefficients must be finite");
    }
}

JointSample::JointSample(std::size_t n, std::size_t m, std::vector<double> x,
                         std::vector<double> y)
    : n_(n), m_(m), x_(std::move(x)), y_(std::move(y)) {
    if (n_ < 1) throw ConfigError("sample: need at least one row");
    if (m_ < 1) throw ConfigError("sample: need at least one conditioning column");
    if (x_.size() != n_ * m_) throw ConfigError("sample: x has wrong size");
    if (y_.size() != n_) throw ConfigError("sample: y has wrong size");
    if (!all_finite(x_) || !all_finite(y_)) {
        throw ConfigError("sample: entries must be finite");
    }
}

std::vector<double> JointSample::x_column(std::size_t j) const {
    std::vector<double> col(n_);
    for (std::size_t i = 0; i < n_; ++i) col[i] = x_[i * m_ + j];
    return col;
}

JointSample sample_delta_gamma(const DeltaGammaModel& model, std::size_t n,
                               std::uint64_t seed) {
    model.validate();
    if (n < 1) throw ConfigError("sample_delta_gamma: n must be >= 1");

    const std::size_t m = model.m;
    const std::size_t d = model.d;
    CounterRng rng(seed);

    std::vector<double> x(n * m);
    std::vector<double> y(n);
    std::vector<double> z(d);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            z[k] = rng.normal_at(static_cast<std::uint64_t>(i) * d + k);
        }
        for (std::size_t j = 0; j < m; ++j) {
            double v = model.r_x[j];
            const auto& p = model.p_x[j];
            const auto& q = model.q_x[j];
            for (std::size_t k = 0; k < d; ++k) {
                v += p[k] * z[k] + q[k] * z[k] * z[k];
            }
            x[i * m + j] = v;
        }
        double v = model.r_y;
        for (std::size_t k = 0; k < d; ++k) {
            v += model.p_y[k] * z[k] + model.q_y[k] * z[k] * z[k];
        }
        y[i] = v;
    }
    return JointSample(n, m, std::move(x), std::move(y));
}

} // namespace covar
