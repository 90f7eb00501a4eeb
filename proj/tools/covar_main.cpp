#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covar/config.hpp"
#include "covar/csv.hpp"
#include "covar/errors.hpp"
#include "covar/presets.hpp"
#include "covar/study.hpp"
#include "covar/version.hpp"

namespace {

using covar::ConfigError;
using covar::RunConfig;
using nlohmann::json;

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    std::size_t replications = 0; // 0 = keep config/preset default
    bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_preset) {
    cmd->add_option("--config", opts.config_path, "JSON config file");
    if (with_preset) {
        cmd->add_option("--preset", opts.preset,
                        "built-in run: table1, table2, table3 or figure1");
    }
    cmd->add_option("--seed", opts.seed, "base seed (overrides the config)")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_option("--threads", opts.threads,
                    "worker cap (default: COVAR_THREADS or hardware)");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--replications", opts.replications, "override replication count");
    cmd->add_flag("--dump-config", opts.dump_config,
                  "print the normalized config and exit");
}

RunConfig load_run_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) {
        throw ConfigError("config: --config FILE is required for this run");
    }
    RunConfig cfg = covar::load_config(opts.config_path);
    if (opts.seed_given) cfg.seed = opts.seed;
    if (opts.replications > 0) cfg.replications = opts.replications;
    return cfg;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t digest_of_json(const json& doc) {
    const std::string bytes = doc.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

void write_manifest(const std::filesystem::path& out_dir, std::uint64_t digest,
                    std::uint64_t base_seed, double wall_seconds,
                    const std::vector<std::string>& outputs) {
    json doc;
    doc["config_digest"] = hex64(digest);
    doc["tool_version"] = covar::kVersion;
    doc["base_seed"] = base_seed;
    doc["wall_time_seconds"] = wall_seconds;
    doc["outputs"] = outputs;
    const auto path = out_dir / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw covar::IoError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw covar::IoError("write failed for '" + path.string() + "'");
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw covar::IoError("cannot create output directory '" + dir + "'");
    return p;
}

int run_estimate(const CommonOpts& opts, bool as_json) {
    RunConfig cfg = load_run_config(opts);
    if (opts.dump_config) {
        std::cout << covar::dump_config(cfg).dump(2) << '\n';
        return 0;
    }
    const auto* ts = std::get_if<covar::TwoStepSettings>(&cfg.estimator);
    if (ts == nullptr) {
        throw ConfigError("config.estimator.type: the estimate command uses the two_step estimator");
    }
    if (cfg.n < 2) throw ConfigError("config.n: sample size required for a single estimate");

    const covar::JointSample sample = covar::sample_delta_gamma(cfg.model, cfg.n, cfg.seed);
    const covar::CoVaREstimate est =
        covar::estimate_covar(sample, cfg.alpha, cfg.beta, ts->rule, ts->spec, ts->nu);

    if (as_json) {
        json doc;
        doc["point"] = est.point;
        doc["ci_low"] = est.ci_low;
        doc["ci_high"] = est.ci_high;
        doc["nu"] = est.nu;
        doc["sigma_y_hat"] = est.sigma_y_hat;
        doc["q_hat"] = est.q_hat.q;
        doc["bandwidths"] = est.bandwidths.delta;
        doc["n"] = est.n;
        doc["ess"] = est.ess;
        std::cout << doc.dump(2) << '\n';
        return 0;
    }
    auto print_vec = [](const char* key, const std::vector<double>& v) {
        std::cout << key;
        for (double x : v) std::cout << ' ' << covar::format_double(x);
        std::cout << '\n';
    };
    std::cout << "point " << covar::format_double(est.point) << '\n'
              << "ci_low " << covar::format_double(est.ci_low) << '\n'
              << "ci_high " << covar::format_double(est.ci_high) << '\n'
              << "nu " << covar::format_double(est.nu) << '\n'
              << "sigma_y_hat " << covar::format_double(est.sigma_y_hat) << '\n';
    print_vec("q_hat", est.q_hat.q);
    print_vec("bandwidths", est.bandwidths.delta);
    std::cout << "n " << est.n << '\n'
              << "ess " << covar::format_double(est.ess) << '\n';
    return 0;
}

covar::PresetRun preset_or_config_studies(const CommonOpts& opts) {
    if (!opts.preset.empty()) {
        if (!covar::is_preset_name(opts.preset)) {
            throw ConfigError("preset: unknown name '" + opts.preset + "'");
        }
        return covar::make_preset(opts.preset, opts.seed_given ? opts.seed : 0,
                                  opts.replications);
    }
    RunConfig cfg = load_run_config(opts);
    covar::PresetRun run;
    run.name = "custom";
    if (cfg.grid) {
        covar::MeasureTableSpec spec;
        spec.model = cfg.model;
        spec.grid = *cfg.grid;
        spec.n = cfg.n >= 2 ? cfg.n : 1000000;
        spec.replications = cfg.replications;
        spec.base_seed = cfg.seed;
        if (const auto* ts = std::get_if<covar::TwoStepSettings>(&cfg.estimator)) {
            spec.rule = ts->rule;
            spec.spec = ts->spec;
        }
        run.measure_table = std::move(spec);
        return run;
    }
    covar::StudyConfig sc = covar::to_study_config(cfg);
    run.studies.emplace_back(covar::estimator_label(sc.estimator), sc);
    return run;
}

std::uint64_t run_digest(const CommonOpts& opts) {
    if (!opts.preset.empty()) {
        json doc;
        doc["preset"] = opts.preset;
        doc["seed"] = opts.seed_given ? opts.seed : 0;
        doc["replications"] = opts.replications;
        return digest_of_json(doc);
    }
    return covar::config_digest(load_run_config(opts));
}

int run_studies(const CommonOpts& opts, bool want_rate, bool want_table) {
    if (opts.dump_config && !opts.config_path.empty()) {
        std::cout << covar::dump_config(load_run_config(opts)).dump(2) << '\n';
        return 0;
    }
    const covar::PresetRun run = preset_or_config_studies(opts);
    const auto out_dir = ensure_out_dir(opts.out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> outputs;
    std::uint64_t base_seed = 0;

    if (run.measure_table) {
        const auto& mt = *run.measure_table;
        base_seed = mt.base_seed;
        const auto rows = covar::measure_grid_study(mt.model, mt.grid, mt.n, mt.replications,
                                                    mt.base_seed, mt.rule, mt.spec, opts.threads);
        const auto path = (out_dir / "measures.csv").string();
        covar::write_measure_csv(path, rows);
        outputs.push_back(path);
        std::cout << "wrote " << path << '\n';
    } else {
        if (run.studies.empty()) throw ConfigError("run: nothing to execute");
        std::vector<std::pair<std::string, covar::StudyReport>> reports;
        for (const auto& [label, sc] : run.studies) {
            base_seed = sc.base_seed;
            reports.emplace_back(label, covar::run_study(sc, opts.threads));
        }
        const bool fit = want_rate || run.with_rate_fit;
        const auto csv_name = fit ? "rate.csv" : "study.csv";
        const auto path = (out_dir / csv_name).string();
        covar::write_study_csv(path, reports);
        outputs.push_back(path);
        std::cout << "wrote " << path << '\n';
        if (fit) {
            const auto& report = reports.front().second;
            std::vector<std::size_t> ns;
            std::vector<double> rmses;
            for (const auto& row : report.rows) {
                ns.push_back(row.n);
                rmses.push_back(row.rmse);
            }
            const auto [slope, intercept] = covar::fit_rate(ns, rmses);
            const auto fit_path = (out_dir / "rate_fit.csv").string();
            covar::write_rate_fit_csv(fit_path, slope, intercept);
            outputs.push_back(fit_path);
            std::cout << "wrote " << fit_path << '\n'
                      << "slope " << covar::format_double(slope) << '\n';
        }
    }
    (void)want_table;

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(out_dir, run_digest(opts), base_seed, wall, outputs);
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Two-step nonparametric CoVaR estimation from simulated loss samples"};
    app.set_version_flag("--version", covar::kVersion);
    app.require_subcommand(1);

    CommonOpts est_opts, study_opts, rate_opts, table_opts;
    bool est_json = false;

    CLI::App* est = app.add_subcommand("estimate", "one CoVaR estimate with its CI");
    add_common(est, est_opts, /*with_preset=*/false);
    est->add_flag("--json", est_json, "emit the report as JSON");

    CLI::App* study = app.add_subcommand("study", "bias/SD/RMSE/CP replication study");
    add_common(study, study_opts, /*with_preset=*/true);

    CLI::App* rate = app.add_subcommand("rate", "RMSE rate-of-convergence study");
    add_common(rate, rate_opts, /*with_preset=*/true);

    CLI::App* table = app.add_subcommand("table", "preset table reproduction");
    add_common(table, table_opts, /*with_preset=*/true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed()) return run_estimate(est_opts, est_json);
        if (study->parsed()) return run_studies(study_opts, false, false);
        if (rate->parsed()) return run_studies(rate_opts, true, false);
        if (table->parsed()) return run_studies(table_opts, false, true);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const covar::DegenerateWeightsError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const covar::DegenerateDensityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const covar::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
