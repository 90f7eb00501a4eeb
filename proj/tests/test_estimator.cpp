#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "covar/errors.hpp"
#include "covar/estimator.hpp"
#include "covar/normal.hpp"
#include "covar/presets.hpp"
#include "covar/rng.hpp"

using covar::BandwidthRule;
using covar::BandwidthVector;
using covar::conditional_cdf;
using covar::estimate_covar;
using covar::estimate_covar_at;
using covar::estimate_sigma_y;
using covar::JointSample;
using covar::KernelFamily;
using covar::KernelSpec;

namespace {

const KernelSpec kGaussian{KernelFamily::gaussian};

JointSample derivative_sample(std::size_t n, std::uint64_t seed) {
    return covar::sample_delta_gamma(covar::univariate_derivative_model(), n, seed);
}

} // namespace

TEST_CASE("power bandwidth rules") {
    const auto g1 = covar::bandwidths_for(BandwidthRule::power_gamma_rule(1.0), 1000000, 1);
    CHECK(g1.delta[0] == doctest::Approx(0.0316228).epsilon(1e-6)); // 10^{-6/4}

    const auto opt = covar::bandwidths_for(BandwidthRule::power_optimal_rule(), 100000, 1);
    CHECK(opt.delta[0] == doctest::Approx(0.1).epsilon(1e-12)); // n^{-1/5}

    const auto g1m2 = covar::bandwidths_for(BandwidthRule::power_gamma_rule(1.0), 1000000, 2);
    REQUIRE(g1m2.dim() == 2);
    CHECK(g1m2.delta[0] == doctest::Approx(0.0630957).epsilon(1e-6)); // 10^{-6/5}
    CHECK(g1m2.delta[1] == g1m2.delta[0]);
    CHECK(g1m2.product() == doctest::Approx(g1m2.delta[0] * g1m2.delta[1]));

    const auto ex = covar::bandwidths_for(BandwidthRule::explicit_rule({0.2, 0.3}), 50, 2);
    CHECK(ex.delta == std::vector<double>{0.2, 0.3});
}

TEST_CASE("bandwidth rule validation") {
    CHECK_THROWS_AS(BandwidthRule::power_gamma_rule(2.5), covar::ConfigError);
    CHECK_THROWS_AS(BandwidthRule::power_gamma_rule(0.0), covar::ConfigError);
    CHECK_THROWS_AS(covar::bandwidths_for(BandwidthRule::power_optimal_rule(), 1, 1),
                    covar::ConfigError);
    CHECK_THROWS_AS(covar::bandwidths_for(BandwidthRule::explicit_rule({0.1}), 100, 2),
                    covar::ConfigError);
}

TEST_CASE("conditional CDF saturates outside the Y range") {
    const JointSample s(3, 1, {0.0, 0.1, -0.1}, {1.0, 2.0, 3.0});
    const double point[] = {0.0};
    const BandwidthVector bw({1.0});
    CHECK(conditional_cdf(s, point, 3.0, bw, kGaussian) == 1.0);
    CHECK(conditional_cdf(s, point, 99.0, bw, kGaussian) == 1.0);
    CHECK(conditional_cdf(s, point, 0.999, bw, kGaussian) == 0.0);
}

TEST_CASE("conditional CDF equals the direct weighted sum") {
    // x spacing chosen so the gaussian weights come out 0.2 / 0.3 / 0.5.
    const double x1 = std::sqrt(-2.0 * std::log(0.4));
    const double x2 = std::sqrt(-2.0 * std::log(0.6));
    const JointSample s(3, 1, {x1, x2, 0.0}, {1.0, 2.0, 3.0});
    const double point[] = {0.0};
    const BandwidthVector bw({1.0});

    // Direct-summation oracle.
    auto phi = [](double t) { return std::exp(-0.5 * t * t); };
    const double raw[3] = {phi(x1), phi(x2), phi(0.0)};
    const double total = raw[0] + raw[1] + raw[2];
    const double expected = (raw[0] + raw[1]) / total; // rows with Y <= 2.5

    CHECK(expected == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(conditional_cdf(s, point, 2.5, bw, kGaussian) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("closed-form kernel roughness values") {
    CHECK(covar::kernel_square_integral(kGaussian) == doctest::Approx(0.2820948).epsilon(1e-7));
    CHECK(covar::kernel_square_integral({KernelFamily::epanechnikov}) == doctest::Approx(0.6));
    CHECK(covar::kernel_square_integral({KernelFamily::uniform}) == doctest::Approx(0.5));
}

TEST_CASE("sigma_y plug-in matches a scalar reference on a small sample") {
    const std::vector<double> x{-0.6, -0.1, 0.2, 0.8, 1.4};
    const std::vector<double> y{0.3, -0.2, 0.9, 0.4, 1.1};
    const JointSample s(5, 1, x, y);
    covar::QuantileVector q;
    q.q = {0.5};
    q.alpha = {0.6};
    const BandwidthVector bw({0.7});
    const double beta = 0.6;
    const double c_hat = 0.45;

    // Reference: plain loops over the defining plug-in formula.
    auto kern = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(6.283185307179586); };
    const double n = 5.0;
    double sw = 0.0;
    for (double xi : x) sw += kern((0.5 - xi) / 0.7);
    const double fx = sw / (n * 0.7);

    double mean = 0.0;
    for (double yi : y) mean += yi;
    mean /= n;
    double ss = 0.0;
    for (double yi : y) ss += (yi - mean) * (yi - mean);
    const double sd_y = std::sqrt(ss / (n - 1.0));
    const double dy = sd_y * std::pow(n, -0.2);

    double sj = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        sj += kern((0.5 - x[i]) / 0.7) * kern((c_hat - y[i]) / dy);
    }
    const double f_joint = sj / (n * 0.7 * dy);
    const double f_cond = f_joint / fx;
    const double expected =
        std::sqrt(beta * (1.0 - beta) / (fx * f_cond * f_cond) * 0.28209479177387814);

    CHECK(estimate_sigma_y(s, q, c_hat, bw, kGaussian, beta) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("point estimate is translation and scale equivariant in Y") {
    const auto s = derivative_sample(4000, 11);
    const auto rule = BandwidthRule::power_gamma_rule(1.0);
    const double alpha[] = {0.9};
    const double base = estimate_covar(s, alpha, 0.9, rule, kGaussian, 0.05).point;

    const double shift = 2.75;
    std::vector<double> y_shift(s.y());
    for (auto& v : y_shift) v += shift;
    const JointSample s_shift(s.n(), s.m(), s.x_data(), y_shift);
    CHECK(estimate_covar(s_shift, alpha, 0.9, rule, kGaussian, 0.05).point == base + shift);

    const double scale = 3.5;
    std::vector<double> y_scale(s.y());
    for (auto& v : y_scale) v *= scale;
    const JointSample s_scale(s.n(), s.m(), s.x_data(), y_scale);
    CHECK(estimate_covar(s_scale, alpha, 0.9, rule, kGaussian, 0.05).point == base * scale);
}

TEST_CASE("confidence interval has the stated half-width") {
    const auto s = derivative_sample(20000, 3);
    const double alpha[] = {0.95};
    const auto est = estimate_covar(s, alpha, 0.95, BandwidthRule::power_gamma_rule(1.0),
                                    kGaussian, 0.05);
    const double z = covar::normal_inverse_cdf(0.975);
    const double expect_hw = z * est.sigma_y_hat /
                             std::sqrt(static_cast<double>(est.n) * est.bandwidths.product());
    CHECK(0.5 * (est.ci_high - est.ci_low) == doctest::Approx(expect_hw).epsilon(1e-12));
    CHECK(est.ci_low <= est.point);
    CHECK(est.point <= est.ci_high);
    CHECK(est.ess > 1.0);
}

TEST_CASE("interval width shrinks as the sample grows") {
    double prev = 1e300;
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        const auto s = derivative_sample(n, 21);
        const double alpha[] = {0.95};
        const auto est = estimate_covar(s, alpha, 0.95, BandwidthRule::power_gamma_rule(1.0),
                                        kGaussian, 0.05);
        const double hw = 0.5 * (est.ci_high - est.ci_low);
        CHECK(hw < prev);
        prev = hw;
    }
}

TEST_CASE("the estimate inverts the conditional CDF at beta") {
    const auto s = derivative_sample(3000, 17);
    const double alpha[] = {0.9};
    const double beta = 0.85;
    const auto est =
        estimate_covar(s, alpha, beta, BandwidthRule::power_gamma_rule(1.0), kGaussian, 0.05);

    CHECK(conditional_cdf(s, est.q_hat.q, est.point, est.bandwidths, kGaussian) >= beta);

    // strictly below beta at the next lower distinct Y value
    double lower = -1e300;
    for (double yi : s.y()) {
        if (yi < est.point && yi > lower) lower = yi;
    }
    REQUIRE(lower > -1e300);
    CHECK(conditional_cdf(s, est.q_hat.q, lower, est.bandwidths, kGaussian) < beta);
}

TEST_CASE("point estimate is nondecreasing in beta") {
    const auto s = derivative_sample(3000, 29);
    const double alpha[] = {0.9};
    double prev = -1e300;
    for (double beta : {0.2, 0.5, 0.8, 0.95, 0.99}) {
        const auto est = estimate_covar(s, alpha, beta, BandwidthRule::power_gamma_rule(1.0),
                                        kGaussian, 0.05);
        CHECK(est.point >= prev);
        prev = est.point;
    }
}

TEST_CASE("probability arguments are validated") {
    const auto s = derivative_sample(100, 1);
    const double alpha_bad[] = {1.0};
    const double alpha_ok[] = {0.9};
    const auto rule = BandwidthRule::power_gamma_rule(1.0);
    CHECK_THROWS_AS(estimate_covar(s, alpha_bad, 0.9, rule, kGaussian, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_covar(s, alpha_ok, 0.0, rule, kGaussian, 0.05),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_covar(s, alpha_ok, 0.9, rule, kGaussian, 1.5),
                    std::invalid_argument);
}

TEST_CASE("median-state difference vanishes identically") {
    const auto s = derivative_sample(2000, 31);
    const double alpha[] = {0.5};
    CHECK(covar::delta_covar(s, alpha, 0.9, BandwidthRule::power_gamma_rule(1.0), kGaussian) ==
          0.0);
}

TEST_CASE("delta CoVaR rejects sub-median levels") {
    const auto s = derivative_sample(100, 33);
    const double alpha[] = {0.3};
    CHECK_THROWS_AS(
        covar::delta_covar(s, alpha, 0.9, BandwidthRule::power_gamma_rule(1.0), kGaussian),
        std::domain_error);
}

TEST_CASE("independent losses leave delta CoVaR near zero") {
    covar::DeltaGammaModel m;
    m.m = 1;
    m.d = 2;
    m.r_x = {0.0};
    m.p_x = {{1.0, 0.0}};
    m.q_x = {{0.0, 0.0}};
    m.r_y = 0.0;
    m.p_y = {0.0, 1.0};
    m.q_y = {0.0, 0.0};
    const auto s = covar::sample_delta_gamma(m, 100000, 71);
    const double alpha[] = {0.95};
    const double d =
        covar::delta_covar(s, alpha, 0.95, BandwidthRule::power_gamma_rule(1.0), kGaussian);
    CHECK(std::fabs(d) <= 0.1);
}

TEST_CASE("degenerate weights propagate from step 2") {
    const JointSample s(3, 1, {0.0, 0.1, 0.2}, {1.0, 2.0, 3.0});
    const double far_point[] = {50.0};
    const BandwidthVector bw({0.5});
    CHECK_THROWS_AS(
        estimate_covar_at(s, far_point, bw, {KernelFamily::epanechnikov}, 0.9),
        covar::DegenerateWeightsError);
}
