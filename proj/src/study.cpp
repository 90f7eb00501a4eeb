#include "covar/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "covar/errors.hpp"
#include "covar/normal.hpp"
#include "covar/parallel.hpp"
#include "covar/rng.hpp"

namespace covar {

std::size_t BatchCountRule::resolve(std::size_t n) const {
    if (use_sqrt) return default_batch_count(n);
    return fixed_k;
}

std::string estimator_label(const EstimatorSettings& settings) {
    char buf[64];
    if (const auto* ts = std::get_if<TwoStepSettings>(&settings)) {
        switch (ts->rule.kind) {
            case BandwidthRule::Kind::power_gamma:
                std::snprintf(buf, sizeof buf, "two_step_gamma%g", ts->rule.gamma);
                return buf;
            case BandwidthRule::Kind::power_optimal:
                return "two_step_optimal";
            case BandwidthRule::Kind::explicit_:
                return "two_step_explicit";
        }
    }
    const auto& bs = std::get<BatchingSettings>(settings);
    if (bs.batches.use_sqrt) return "batching_sqrt";
    std::snprintf(buf, sizeof buf, "batching_k%zu", bs.batches.fixed_k);
    return buf;
}

void StudyConfig::validate() const {
    model.validate();
    if (alpha.size() != model.m) {
        throw ConfigError("study.alpha: expected one level per conditioning portfolio");
    }
    for (double a : alpha) {
        if (!(a > 0.0 && a < 1.0)) throw ConfigError("study.alpha: levels must lie in (0,1)");
    }
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("study.beta: must lie in (0,1)");
    if (n_values.empty()) throw ConfigError("study.n_values: must be nonempty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 2) throw ConfigError("study.n_values: entries must be >= 2");
        if (i > 0 && n_values[i] <= n_values[i - 1]) {
            throw ConfigError("study.n_values: must be strictly increasing");
        }
    }
    if (replications < 1) throw ConfigError("study.replications: must be >= 1");
    if (const auto* ts = std::get_if<TwoStepSettings>(&estimator)) {
        if (!(ts->nu > 0.0 && ts->nu < 1.0)) throw ConfigError("estimator.nu: must lie in (0,1)");
    } else if (const auto* bs = std::get_if<BatchingSettings>(&estimator)) {
        if (model.m != 1) {
            throw ConfigError("estimator: the batching baseline needs a univariate condition");
        }
        if (!bs->batches.use_sqrt && bs->batches.fixed_k < 1) {
            throw ConfigError("estimator.batches: fixed batch count must be >= 1");
        }
    }
}

StudyReport run_study_with(const StudyConfig& cfg, const ReplicationEstimator& estimator,
                           bool estimator_has_ci, unsigned threads) {
    cfg.validate();
    if (!cfg.true_value.has_value()) {
        throw ConfigError("study.true_value: required to compute bias/RMSE/CP");
    }
    const double truth = *cfg.true_value;
    const std::size_t reps = cfg.replications;

    StudyReport report;
    report.rows.reserve(cfg.n_values.size());

    std::vector<ReplicationResult> results(reps);
    for (std::size_t n : cfg.n_values) {
        parallel_for(reps, threads, [&](std::size_t r) {
            const std::uint64_t seed = derive_seed(cfg.base_seed, n, r);
            const JointSample sample = sample_delta_gamma(cfg.model, n, seed);
            results[r] = estimator(sample);
        });

        // Deterministic fold in replication order.
        double sum = 0.0;
        double sum_sq_err = 0.0;
        std::size_t covered = 0;
        for (const auto& res : results) {
            sum += res.point;
            const double e = res.point - truth;
            sum_sq_err += e * e;
            if (res.ci && res.ci->first <= truth && truth <= res.ci->second) ++covered;
        }
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (const auto& res : results) {
            const double d = res.point - mean;
            ss += d * d;
        }

        StudyRow row;
        row.n = n;
        row.mean = mean;
        row.sd = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1)) : 0.0;
        row.bias = mean - truth;
        row.rmse = std::sqrt(sum_sq_err / static_cast<double>(reps));
        if (estimator_has_ci) {
            row.cp = static_cast<double>(covered) / static_cast<double>(reps);
        }
        report.rows.push_back(row);
    }
    return report;
}

StudyReport run_study(const StudyConfig& cfg, unsigned threads) {
    cfg.validate();
    if (const auto* ts = std::get_if<TwoStepSettings>(&cfg.estimator)) {
        auto est = [settings = *ts, alpha = cfg.alpha, beta = cfg.beta](const JointSample& sample) {
            const CoVaREstimate e =
                estimate_covar(sample, alpha, beta, settings.rule, settings.spec, settings.nu);
            return ReplicationResult{e.point, std::make_pair(e.ci_low, e.ci_high)};
        };
        return run_study_with(cfg, est, /*estimator_has_ci=*/true, threads);
    }
    const auto& bs = std::get<BatchingSettings>(cfg.estimator);
    auto est = [rule = bs.batches, alpha = cfg.alpha[0], beta = cfg.beta](const JointSample& sample) {
        const std::size_t k = rule.resolve(sample.n());
        return ReplicationResult{estimate_covar_batching(sample, alpha, beta, k), std::nullopt};
    };
    return run_study_with(cfg, est, /*estimator_has_ci=*/false, threads);
}

std::pair<double, double> fit_rate(std::span<const std::size_t> n_values,
                                   std::span<const double> rmse_values) {
    if (n_values.size() != rmse_values.size() || n_values.size() < 3) {
        throw std::domain_error("fit_rate: need at least 3 matched points");
    }
    const std::size_t k = n_values.size();
    std::vector<double> lx(k), ly(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (n_values[i] < 1 || !(rmse_values[i] > 0.0)) {
            throw std::domain_error("fit_rate: n and rmse must be positive");
        }
        lx[i] = std::log10(static_cast<double>(n_values[i]));
        ly[i] = std::log10(rmse_values[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw std::domain_error("fit_rate: n values must not be all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

std::vector<MeasureGridRow> measure_grid_study(const DeltaGammaModel& model,
                                               std::span<const MeasureGridPoint> grid,
                                               std::size_t n, std::size_t replications,
                                               std::uint64_t base_seed,
                                               const BandwidthRule& rule, KernelSpec spec,
                                               unsigned threads) {
    model.validate();
    if (model.m != 2) throw ConfigError("measure grid: model must have m = 2");
    if (grid.empty()) throw ConfigError("measure grid: empty grid");
    if (replications < 1) throw ConfigError("measure grid: replications must be >= 1");

    constexpr std::array<MeasureKind, 5> kinds = {
        MeasureKind::multivariate, MeasureKind::var_only, MeasureKind::univariate_x1,
        MeasureKind::univariate_x2, MeasureKind::aggregate};

    std::vector<std::vector<std::array<double, 5>>> per_rep(
        replications, std::vector<std::array<double, 5>>(grid.size()));

    parallel_for(replications, threads, [&](std::size_t r) {
        const JointSample sample =
            sample_delta_gamma(model, n, derive_seed(base_seed, n, r));
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double alpha[] = {grid[g].alpha1, grid[g].alpha2};
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                per_rep[r][g][k] =
                    estimate_measure(sample, kinds[k], alpha, grid[g].beta, rule, spec);
            }
        }
    });

    std::vector<MeasureGridRow> rows(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        rows[g].at = grid[g];
        for (std::size_t k = 0; k < 5; ++k) {
            double sum = 0.0;
            for (std::size_t r = 0; r < replications; ++r) sum += per_rep[r][g][k];
            rows[g].measures[k] = sum / static_cast<double>(replications);
        }
    }
    return rows;
}

double analytic_covar_univariate(const DeltaGammaModel& model, double alpha, double beta) {
    model.validate();
    const bool shape_ok = model.m == 1 && model.d == 2 && model.r_x[0] == 0.0 &&
                          model.p_x[0][0] == 1.0 && model.p_x[0][1] == 0.0 &&
                          model.q_x[0][0] == 0.0 && model.q_x[0][1] == 0.0 &&
                          model.q_y[1] == 0.0;
    if (!shape_ok) {
        throw ConfigError(
            "analytic_covar_univariate: model must be X = Z1, Y = r + p1*X + q1*X^2 + p2*Z2");
    }
    const double za = normal_inverse_cdf(alpha);
    const double zb = normal_inverse_cdf(beta);
    return model.r_y + model.p_y[0] * za + model.q_y[0] * za * za + model.p_y[1] * zb;
}

} // namespace covar
