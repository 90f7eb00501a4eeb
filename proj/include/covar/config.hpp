#ifndef COVAR_CONFIG_HPP
#define COVAR_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "covar/study.hpp"

namespace covar {

/// Everything a run needs, parsed from one JSON document.
///
/// Shared fields: model, estimator, alpha, beta, seed. `n` drives single
/// estimates; the optional study fields drive replication studies; the
/// optional grid drives measure-comparison tables.
struct RunConfig {
    DeltaGammaModel model;
    EstimatorSettings estimator = TwoStepSettings{};
    std::vector<double> alpha;
    double beta = 0.95;
    std::uint64_t seed = 0;

    std::size_t n = 0;
    std::optional<std::vector<std::size_t>> n_values;
    std::size_t replications = 100;
    std::optional<double> true_value;
    std::optional<std::vector<MeasureGridPoint>> grid;
};

/// Parses and validates a config document. Throws ConfigError naming the
/// offending field on any problem.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Canonical normalized form: defaults made explicit, keys sorted.
/// parse_config(dump_config(c)) produces an identical digest.
nlohmann::json dump_config(const RunConfig& config);

/// FNV-1a 64-bit digest of the canonical serialized form.
std::uint64_t config_digest(const RunConfig& config);

/// Study view of a run config (requires the study fields to be present).
StudyConfig to_study_config(const RunConfig& config);

} // namespace covar

#endif // COVAR_CONFIG_HPP
