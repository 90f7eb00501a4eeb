#ifndef COVAR_STUDY_HPP
#define COVAR_STUDY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covar/baselines.hpp"
#include "covar/estimator.hpp"
#include "covar/simulation.hpp"

namespace covar {

/// Two-step estimator settings for a study.
struct TwoStepSettings {
    BandwidthRule rule = BandwidthRule::power_gamma_rule(1.0);
    KernelSpec spec{};
    double nu = 0.05;
};

/// Batch-count rule for the batching baseline: ceil(sqrt(n)) or a fixed k.
struct BatchCountRule {
    bool use_sqrt = true;
    std::size_t fixed_k = 0;

    std::size_t resolve(std::size_t n) const;
};

struct BatchingSettings {
    BatchCountRule batches{};
};

using EstimatorSettings = std::variant<TwoStepSettings, BatchingSettings>;

/// Short stable label for an estimator, used in report and CSV rows
/// (e.g. "two_step_gamma1", "batching_sqrt").
std::string estimator_label(const EstimatorSettings& settings);

/// A replication study: fixed model, estimator and levels, swept over
/// sample sizes with R independent replications each. Replication r at
/// sample size n draws its sample with seed derive_seed(base_seed, n, r).
struct StudyConfig {
    DeltaGammaModel model;
    EstimatorSettings estimator;
    std::vector<double> alpha;
    double beta = 0.95;
    std::vector<std::size_t> n_values;
    std::size_t replications = 100;
    std::uint64_t base_seed = 0;
    std::optional<double> true_value;

    void validate() const;
};

/// Aggregates for one sample size. cp needs an estimator that produces
/// confidence intervals, so it stays empty for the batching baseline.
struct StudyRow {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0; // sample SD over replications (R-1 divisor)
    double bias = 0.0;
    double rmse = 0.0;
    std::optional<double> cp;
};

struct StudyReport {
    std::vector<StudyRow> rows;
    std::optional<double> rate_slope;
    std::optional<double> rate_intercept;
};

/// One replication's output: the point estimate and, when the estimator
/// provides one, a confidence interval.
struct ReplicationResult {
    double point = 0.0;
    std::optional<std::pair<double, double>> ci;
};

using ReplicationEstimator = std::function<ReplicationResult(const JointSample&)>;

/// Runs the study described by cfg. Replications run in parallel on up to
/// `threads` workers (0 = auto); results are identical for any worker
/// count. A failed replication aborts the whole study.
StudyReport run_study(const StudyConfig& cfg, unsigned threads = 0);

/// Harness core with an injectable per-replication estimator.
StudyReport run_study_with(const StudyConfig& cfg, const ReplicationEstimator& estimator,
                           bool estimator_has_ci, unsigned threads = 0);

/// OLS fit of log10(rmse) on log10(n); returns {slope, intercept}.
/// Needs at least 3 points, all positive (std::domain_error otherwise).
std::pair<double, double> fit_rate(std::span<const std::size_t> n_values,
                                   std::span<const double> rmse_values);

/// One (alpha_1, alpha_2, beta) cell of a measure-comparison grid.
struct MeasureGridPoint {
    double alpha1 = 0.5;
    double alpha2 = 0.5;
    double beta = 0.95;
};

/// Mean of each of the five measures over the replications, one row per
/// grid cell, in grid order. Measure order matches MeasureKind.
struct MeasureGridRow {
    MeasureGridPoint at;
    std::array<double, 5> measures{};
};

/// Measure-comparison study on an m = 2 model: every replication draws one
/// sample (seed derive_seed(base_seed, n, r)) and evaluates all five
/// measures at every grid cell; cells report means over replications.
std::vector<MeasureGridRow> measure_grid_study(const DeltaGammaModel& model,
                                               std::span<const MeasureGridPoint> grid,
                                               std::size_t n, std::size_t replications,
                                               std::uint64_t base_seed,
                                               const BandwidthRule& rule, KernelSpec spec,
                                               unsigned threads = 0);

/// Closed-form CoVaR for the quadratic single-underlying structure
///   X = Z_1,  Y = r + p1*X + q1*X^2 + p2*Z_2:
/// r + p1*z_a + q1*z_a^2 + p2*z_b with z_a = Phi^{-1}(alpha), z_b = Phi^{-1}(beta).
/// Throws ConfigError if the model does not have that exact structure.
double analytic_covar_univariate(const DeltaGammaModel& model, double alpha, double beta);

} // namespace covar

#endif // COVAR_STUDY_HPP
