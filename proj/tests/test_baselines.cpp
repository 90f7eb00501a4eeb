#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "covar/baselines.hpp"
#include "covar/presets.hpp"
#include "covar/quantile.hpp"
#include "covar/rng.hpp"

using covar::estimate_covar_batching;
using covar::estimate_measure;
using covar::estimate_var;
using covar::JointSample;
using covar::KernelSpec;
using covar::MeasureKind;

namespace {

const KernelSpec kGaussian{};

JointSample paired_sample(std::size_t n, std::uint64_t seed) {
    // y = 100 + x, with x a shuffled permutation of 1..n
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 1.0);
    covar::CounterRng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_at(i) * static_cast<double>(i + 1));
        std::swap(x[i], x[std::min(j, i)]);
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 100.0 + x[i];
    return JointSample(n, 1, std::move(x), std::move(y));
}

JointSample network_sample(std::size_t n, std::uint64_t seed) {
    return covar::sample_delta_gamma(covar::three_institution_model(), n, seed);
}

} // namespace

TEST_CASE("VaR is the order-statistic quantile of Y") {
    std::vector<double> y(100);
    std::iota(y.begin(), y.end(), 1.0);
    CHECK(estimate_var(y, 0.95) == 95.0);
}

TEST_CASE("single batch pairs the full-sample X quantile with its Y") {
    const auto s = paired_sample(10, 5);
    // ceil(0.6*10) = 6th smallest x is 6, paired with y = 106; k = 1 makes
    // the final order statistic that single recorded value.
    CHECK(estimate_covar_batching(s, 0.6, 0.5, 1) == 106.0);
    CHECK(estimate_covar_batching(s, 0.6, 0.99, 1) == 106.0);
}

TEST_CASE("one pair per batch degenerates to VaR") {
    const auto s = network_sample(500, 9); // any joint sample works here
    const JointSample uni(500, 1, s.x_column(0), s.y());
    for (double beta : {0.5, 0.9, 0.97}) {
        CHECK(estimate_covar_batching(uni, 0.95, beta, uni.n()) ==
              estimate_var(uni.y(), beta));
    }
}

TEST_CASE("remainder rows are discarded") {
    // n=10, k=3: batches of 3 using rows 0..8; row 9 never participates.
    std::vector<double> x{1, 2, 3, 1, 2, 3, 1, 2, 3, -999};
    std::vector<double> y{11, 12, 13, 21, 22, 23, 31, 32, 33, -999};
    const JointSample s(10, 1, std::move(x), std::move(y));
    // alpha=0.5 -> ceil(1.5)=2nd smallest x per batch -> y in {12,22,32};
    // beta=0.5 -> ceil(1.5)=2nd smallest recorded value = 22.
    CHECK(estimate_covar_batching(s, 0.5, 0.5, 3) == 22.0);
}

TEST_CASE("batching rejects unsupported shapes") {
    const auto s2 = network_sample(100, 2);
    CHECK_THROWS_AS(estimate_covar_batching(s2, 0.9, 0.9, 10), std::invalid_argument);
    const auto s1 = paired_sample(20, 3);
    CHECK_THROWS_AS(estimate_covar_batching(s1, 0.9, 0.9, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_covar_batching(s1, 0.9, 0.9, 21), std::invalid_argument);
}

TEST_CASE("default batch count is ceil(sqrt(n))") {
    CHECK(covar::default_batch_count(1000000) == 1000);
    CHECK(covar::default_batch_count(10) == 4);
    CHECK(covar::default_batch_count(1) == 1);
}

TEST_CASE("univariate measures equal the projected two-step estimate bit for bit") {
    const auto s = network_sample(20000, 77);
    const auto rule = covar::BandwidthRule::power_gamma_rule(1.0);
    const double alpha[] = {0.95, 0.9};

    const JointSample proj1(s.n(), 1, s.x_column(0), s.y());
    const double a1[] = {alpha[0]};
    const auto direct1 = covar::estimate_covar(proj1, a1, 0.95, rule, kGaussian, 0.05);
    CHECK(estimate_measure(s, MeasureKind::univariate_x1, alpha, 0.95, rule, kGaussian) ==
          direct1.point);

    const JointSample proj2(s.n(), 1, s.x_column(1), s.y());
    const double a2[] = {alpha[1]};
    const auto direct2 = covar::estimate_covar(proj2, a2, 0.95, rule, kGaussian, 0.05);
    CHECK(estimate_measure(s, MeasureKind::univariate_x2, alpha, 0.95, rule, kGaussian) ==
          direct2.point);
}

TEST_CASE("multivariate measure equals the full two-step estimate") {
    const auto s = network_sample(20000, 78);
    const auto rule = covar::BandwidthRule::power_gamma_rule(1.0);
    const double alpha[] = {0.95, 0.95};
    const auto direct = covar::estimate_covar(s, alpha, 0.95, rule, kGaussian, 0.05);
    CHECK(estimate_measure(s, MeasureKind::multivariate, alpha, 0.95, rule, kGaussian) ==
          direct.point);
}

TEST_CASE("var-only measure ignores the condition") {
    const auto s = network_sample(5000, 79);
    const double alpha[] = {0.95, 0.95};
    const auto rule = covar::BandwidthRule::power_gamma_rule(1.0);
    CHECK(estimate_measure(s, MeasureKind::var_only, alpha, 0.9, rule, kGaussian) ==
          estimate_var(s.y(), 0.9));
}

TEST_CASE("aggregate measure is symmetric in the two conditions") {
    const auto s = network_sample(20000, 80);
    // swap the X columns
    std::vector<double> swapped(s.n() * 2);
    for (std::size_t i = 0; i < s.n(); ++i) {
        swapped[i * 2] = s.x(i, 1);
        swapped[i * 2 + 1] = s.x(i, 0);
    }
    const JointSample s_swapped(s.n(), 2, std::move(swapped), s.y());

    const auto rule = covar::BandwidthRule::power_gamma_rule(1.0);
    const double alpha[] = {0.95, 0.8};
    const double alpha_swapped[] = {0.8, 0.95};
    CHECK(estimate_measure(s, MeasureKind::aggregate, alpha, 0.9, rule, kGaussian) ==
          estimate_measure(s_swapped, MeasureKind::aggregate, alpha_swapped, 0.9, rule,
                           kGaussian));
}

TEST_CASE("measures demand a two-condition sample") {
    const auto s = paired_sample(100, 4);
    const double alpha[] = {0.9, 0.9};
    CHECK_THROWS_AS(
        estimate_measure(s, MeasureKind::multivariate, alpha, 0.9,
                         covar::BandwidthRule::power_gamma_rule(1.0), kGaussian),
        std::invalid_argument);
}
