#include "covar/presets.hpp"

#include "covar/errors.hpp"

namespace covar {

namespace {

const std::vector<std::size_t> kDecadeGrid = {100, 1000, 10000, 100000, 1000000};
const std::vector<std::size_t> kHalfDecadeGrid = {1000,   3162,   10000, 31623,
                                                  100000, 316228, 1000000};

StudyConfig base_univariate_study(std::uint64_t seed, std::size_t reps) {
    StudyConfig cfg;
    cfg.model = univariate_derivative_model();
    cfg.alpha = {0.95};
    cfg.beta = 0.95;
    cfg.n_values = kDecadeGrid;
    cfg.replications = reps;
    cfg.base_seed = seed;
    cfg.true_value = analytic_covar_univariate(cfg.model, 0.95, 0.95);
    return cfg;
}

} // namespace

DeltaGammaModel univariate_derivative_model() {
    DeltaGammaModel model;
    model.m = 1;
    model.d = 2;
    model.r_x = {0.0};
    model.p_x = {{1.0, 0.0}};
    model.q_x = {{0.0, 0.0}};
    model.r_y = -0.1;
    model.p_y = {0.1, 0.2};
    model.q_y = {0.3, 0.0};
    return model;
}

DeltaGammaModel three_institution_model() {
    DeltaGammaModel model;
    model.m = 2;
    model.d = 2;
    model.r_x = {-0.15, -0.12};
    model.p_x = {{0.6, -0.2}, {-0.2, 0.8}};
    model.q_x = {{0.8, -0.2}, {-0.2, 0.6}};
    model.r_y = -0.10;
    model.p_y = {0.2, 0.1};
    model.q_y = {0.2, 0.3};
    return model;
}

bool is_preset_name(const std::string& name) {
    return name == "table1" || name == "table2" || name == "table3" || name == "figure1";
}

PresetRun make_preset(const std::string& name, std::uint64_t base_seed,
                      std::size_t replications_override) {
    const std::size_t reps = replications_override > 0 ? replications_override : 100;
    PresetRun run;
    run.name = name;

    if (name == "table1") {
        StudyConfig two_step = base_univariate_study(base_seed, reps);
        two_step.estimator = TwoStepSettings{BandwidthRule::power_gamma_rule(1.0), {}, 0.05};
        StudyConfig batching = two_step;
        batching.estimator = BatchingSettings{};
        run.studies = {{estimator_label(two_step.estimator), two_step},
                       {estimator_label(batching.estimator), batching}};
        return run;
    }
    if (name == "table2") {
        StudyConfig wide = base_univariate_study(base_seed, reps);
        wide.estimator = TwoStepSettings{BandwidthRule::power_gamma_rule(0.1), {}, 0.05};
        StudyConfig narrow = wide;
        narrow.estimator = TwoStepSettings{BandwidthRule::power_gamma_rule(1.9), {}, 0.05};
        run.studies = {{estimator_label(wide.estimator), wide},
                       {estimator_label(narrow.estimator), narrow}};
        return run;
    }
    if (name == "figure1") {
        StudyConfig cfg = base_univariate_study(base_seed, reps);
        cfg.n_values = kHalfDecadeGrid;
        cfg.estimator = TwoStepSettings{BandwidthRule::power_optimal_rule(), {}, 0.05};
        run.studies = {{estimator_label(cfg.estimator), cfg}};
        run.with_rate_fit = true;
        return run;
    }
    if (name == "table3") {
        MeasureTableSpec spec;
        spec.model = three_institution_model();
        for (double beta : {0.80, 0.95}) {
            spec.grid.push_back({0.50, 0.50, beta});
            spec.grid.push_back({0.80, 0.80, beta});
            spec.grid.push_back({0.80, 0.95, beta});
            spec.grid.push_back({0.95, 0.80, beta});
            spec.grid.push_back({0.95, 0.95, beta});
        }
        spec.n = 1000000;
        spec.replications = reps;
        spec.base_seed = base_seed;
        spec.rule = BandwidthRule::power_gamma_rule(1.0);
        run.measure_table = std::move(spec);
        return run;
    }
    throw ConfigError("preset: unknown name '" + name + "'");
}

} // namespace covar
