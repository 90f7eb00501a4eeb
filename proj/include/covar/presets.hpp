#ifndef COVAR_PRESETS_HPP
#define COVAR_PRESETS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covar/study.hpp"

namespace covar {

/// Two-portfolio model with a closed-form CoVaR: the conditioning loss is
/// a single standard normal underlying and Y is a derivative on it plus an
/// independent market factor,
///   X = Z1,  Y = -0.1 + 0.1*X + 0.3*X^2 + 0.2*Z2.
DeltaGammaModel univariate_derivative_model();

/// Three institutions holding two common securities; all three losses are
/// quadratic in the same two independent normal factors, so the
/// conditioning pair (X1, X2) is negatively correlated while both drive Y.
DeltaGammaModel three_institution_model();

/// Measure-comparison table: five measures over a grid of levels.
struct MeasureTableSpec {
    DeltaGammaModel model;
    std::vector<MeasureGridPoint> grid;
    std::size_t n = 0;
    std::size_t replications = 100;
    std::uint64_t base_seed = 0;
    BandwidthRule rule = BandwidthRule::power_gamma_rule(1.0);
    KernelSpec spec{};
};

/// A named bundle of runs: either labelled replication studies (possibly
/// with a log-log rate fit over the n grid) or one measure table.
struct PresetRun {
    std::string name;
    std::vector<std::pair<std::string, StudyConfig>> studies;
    bool with_rate_fit = false;
    std::optional<MeasureTableSpec> measure_table;
};

/// Built-in presets: "table1" (two-step vs batching), "table2" (bandwidth
/// tradeoff), "figure1" (rate-of-convergence grid), "table3" (measure
/// comparison). replications_override 0 keeps each preset's default of 100.
PresetRun make_preset(const std::string& name, std::uint64_t base_seed,
                      std::size_t replications_override = 0);

bool is_preset_name(const std::string& name);

} // namespace covar

#endif // COVAR_PRESETS_HPP
