#include "covar/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "covar/errors.hpp"

namespace covar {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw ConfigError("config." + path + ": missing required field");
    }
    return j.at(key);
}

double as_double(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("config." + path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError("config." + path + ": must be finite");
    return v;
}

double as_probability(const json& j, const std::string& path) {
    const double v = as_double(j, path);
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("config." + path + ": must lie in (0,1)");
    return v;
}

std::size_t as_count(const json& j, const std::string& path, std::size_t min_value = 1) {
    if (!j.is_number_unsigned() && !j.is_number_integer()) {
        throw ConfigError("config." + path + ": expected a nonnegative integer");
    }
    const auto v = j.get<long long>();
    if (v < static_cast<long long>(min_value)) {
        throw ConfigError("config." + path + ": must be >= " + std::to_string(min_value));
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> as_double_vector(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError("config." + path + ": expected a nonempty array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_double(j.at(i), path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<std::vector<double>> as_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError("config." + path + ": expected a nonempty array of rows");
    std::vector<std::vector<double>> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_double_vector(j.at(i), path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

DeltaGammaModel parse_model(const json& j) {
    DeltaGammaModel model;
    model.m = as_count(need(j, "m", "model.m"), "model.m");
    model.d = as_count(need(j, "d", "model.d"), "model.d");
    model.r_x = as_double_vector(need(j, "r_x", "model.r_x"), "model.r_x");
    model.p_x = as_matrix(need(j, "p_x", "model.p_x"), "model.p_x");
    model.q_x = as_matrix(need(j, "q_x", "model.q_x"), "model.q_x");
    model.r_y = as_double(need(j, "r_y", "model.r_y"), "model.r_y");
    model.p_y = as_double_vector(need(j, "p_y", "model.p_y"), "model.p_y");
    model.q_y = as_double_vector(need(j, "q_y", "model.q_y"), "model.q_y");
    try {
        model.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config.") + e.what());
    }
    return model;
}

BandwidthRule parse_bandwidth(const json& j) {
    const std::string rule = need(j, "rule", "estimator.bandwidth.rule").get<std::string>();
    if (rule == "power_gamma") {
        const double gamma =
            as_double(need(j, "gamma", "estimator.bandwidth.gamma"), "estimator.bandwidth.gamma");
        if (!(gamma > 0.0 && gamma < 2.0)) {
            throw ConfigError("config.estimator.bandwidth.gamma: must lie in (0,2)");
        }
        return BandwidthRule::power_gamma_rule(gamma);
    }
    if (rule == "power_optimal") return BandwidthRule::power_optimal_rule();
    if (rule == "explicit") {
        auto delta =
            as_double_vector(need(j, "delta", "estimator.bandwidth.delta"), "estimator.bandwidth.delta");
        for (std::size_t i = 0; i < delta.size(); ++i) {
            if (!(delta[i] > 0.0)) {
                throw ConfigError("config.estimator.bandwidth.delta[" + std::to_string(i) +
                                  "]: must be positive");
            }
        }
        return BandwidthRule::explicit_rule(std::move(delta));
    }
    throw ConfigError("config.estimator.bandwidth.rule: expected power_gamma, power_optimal or explicit");
}

EstimatorSettings parse_estimator(const json& j) {
    const std::string type = need(j, "type", "estimator.type").get<std::string>();
    if (type == "two_step") {
        TwoStepSettings ts;
        if (j.contains("kernel")) {
            ts.spec.family = kernel_family_from_name(j.at("kernel").get<std::string>());
        }
        if (j.contains("bandwidth")) ts.rule = parse_bandwidth(j.at("bandwidth"));
        if (j.contains("nu")) ts.nu = as_probability(j.at("nu"), "estimator.nu");
        return ts;
    }
    if (type == "batching") {
        BatchingSettings bs;
        if (j.contains("batches")) {
            const json& b = j.at("batches");
            if (b.is_string() && b.get<std::string>() == "sqrt") {
                bs.batches.use_sqrt = true;
            } else if (b.is_number_integer() || b.is_number_unsigned()) {
                bs.batches.use_sqrt = false;
                bs.batches.fixed_k = as_count(b, "estimator.batches");
            } else {
                throw ConfigError("config.estimator.batches: expected \"sqrt\" or an integer");
            }
        }
        return bs;
    }
    throw ConfigError("config.estimator.type: expected two_step or batching");
}

} // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    RunConfig cfg;
    cfg.model = parse_model(need(doc, "model", "model"));

    if (doc.contains("estimator")) cfg.estimator = parse_estimator(doc.at("estimator"));

    const json& alpha_node = need(doc, "alpha", "alpha");
    if (!alpha_node.is_array()) throw ConfigError("config.alpha: expected an array");
    for (std::size_t i = 0; i < alpha_node.size(); ++i) {
        cfg.alpha.push_back(as_probability(alpha_node.at(i), "alpha[" + std::to_string(i) + "]"));
    }
    if (cfg.alpha.size() != cfg.model.m) {
        throw ConfigError("config.alpha: expected one level per conditioning portfolio (m)");
    }
    cfg.beta = as_probability(need(doc, "beta", "beta"), "beta");

    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_integer() && !s.is_number_unsigned()) {
            throw ConfigError("config.seed: expected an integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("n")) cfg.n = as_count(doc.at("n"), "n", 2);

    if (doc.contains("study")) {
        const json& st = doc.at("study");
        const json& nv = need(st, "n_values", "study.n_values");
        if (!nv.is_array() || nv.empty()) {
            throw ConfigError("config.study.n_values: expected a nonempty array");
        }
        std::vector<std::size_t> counts;
        for (std::size_t i = 0; i < nv.size(); ++i) {
            counts.push_back(as_count(nv.at(i), "study.n_values[" + std::to_string(i) + "]", 2));
            if (i > 0 && counts[i] <= counts[i - 1]) {
                throw ConfigError("config.study.n_values: must be strictly increasing");
            }
        }
        cfg.n_values = std::move(counts);
        if (st.contains("replications")) {
            cfg.replications = as_count(st.at("replications"), "study.replications");
        }
        if (st.contains("true_value")) {
            cfg.true_value = as_double(st.at("true_value"), "study.true_value");
        }
    }

    if (doc.contains("grid")) {
        const json& grid = doc.at("grid");
        if (!grid.is_array() || grid.empty()) {
            throw ConfigError("config.grid: expected a nonempty array");
        }
        std::vector<MeasureGridPoint> points;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const std::string path = "grid[" + std::to_string(i) + "]";
            const json& cell = grid.at(i);
            MeasureGridPoint p;
            p.alpha1 = as_probability(need(cell, "alpha1", path + ".alpha1"), path + ".alpha1");
            p.alpha2 = as_probability(need(cell, "alpha2", path + ".alpha2"), path + ".alpha2");
            p.beta = as_probability(need(cell, "beta", path + ".beta"), path + ".beta");
            points.push_back(p);
        }
        cfg.grid = std::move(points);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

nlohmann::json dump_config(const RunConfig& config) {
    json doc;
    json model;
    model["m"] = config.model.m;
    model["d"] = config.model.d;
    model["r_x"] = config.model.r_x;
    model["p_x"] = config.model.p_x;
    model["q_x"] = config.model.q_x;
    model["r_y"] = config.model.r_y;
    model["p_y"] = config.model.p_y;
    model["q_y"] = config.model.q_y;
    doc["model"] = std::move(model);

    json est;
    if (const auto* ts = std::get_if<TwoStepSettings>(&config.estimator)) {
        est["type"] = "two_step";
        est["kernel"] = kernel_family_name(ts->spec.family);
        json bw;
        switch (ts->rule.kind) {
            case BandwidthRule::Kind::power_gamma:
                bw["rule"] = "power_gamma";
                bw["gamma"] = ts->rule.gamma;
                break;
            case BandwidthRule::Kind::power_optimal:
                bw["rule"] = "power_optimal";
                break;
            case BandwidthRule::Kind::explicit_:
                bw["rule"] = "explicit";
                bw["delta"] = ts->rule.delta;
                break;
        }
        est["bandwidth"] = std::move(bw);
        est["nu"] = ts->nu;
    } else {
        const auto& bs = std::get<BatchingSettings>(config.estimator);
        est["type"] = "batching";
        if (bs.batches.use_sqrt) {
            est["batches"] = "sqrt";
        } else {
            est["batches"] = bs.batches.fixed_k;
        }
    }
    doc["estimator"] = std::move(est);

    doc["alpha"] = config.alpha;
    doc["beta"] = config.beta;
    doc["seed"] = config.seed;
    if (config.n >= 2) doc["n"] = config.n;
    if (config.n_values) {
        json st;
        st["n_values"] = *config.n_values;
        st["replications"] = config.replications;
        if (config.true_value) st["true_value"] = *config.true_value;
        doc["study"] = std::move(st);
    }
    if (config.grid) {
        json grid = json::array();
        for (const auto& p : *config.grid) {
            grid.push_back({{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"beta", p.beta}});
        }
        doc["grid"] = std::move(grid);
    }
    return doc;
}

std::uint64_t config_digest(const RunConfig& config) {
    const std::string bytes = dump_config(config).dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

StudyConfig to_study_config(const RunConfig& config) {
    if (!config.n_values) {
        throw ConfigError("config.study: required for study runs");
    }
    StudyConfig sc;
    sc.model = config.model;
    sc.estimator = config.estimator;
    sc.alpha = config.alpha;
    sc.beta = config.beta;
    sc.n_values = *config.n_values;
    sc.replications = config.replications;
    sc.base_seed = config.seed;
    sc.true_value = config.true_value;
    return sc;
}

} // namespace covar
