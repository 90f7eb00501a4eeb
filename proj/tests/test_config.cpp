#include <doctest.h>

#include <json.hpp>

#include "covar/config.hpp"
#include "covar/errors.hpp"

using covar::ConfigError;
using covar::parse_config;
using covar::RunConfig;
using nlohmann::json;

namespace {

json minimal_doc() {
    return json::parse(R"({
      "model": {
        "m": 1, "d": 2,
        "r_x": [0.0], "p_x": [[1.0, 0.0]], "q_x": [[0.0, 0.0]],
        "r_y": -0.1, "p_y": [0.1, 0.2], "q_y": [0.3, 0.0]
      },
      "estimator": {
        "type": "two_step",
        "kernel": "gaussian",
        "bandwidth": {"rule": "power_gamma", "gamma": 1.0},
        "nu": 0.05
      },
      "alpha": [0.95],
      "beta": 0.95,
      "n": 1000,
      "seed": 42
    })");
}

} // namespace

TEST_CASE("a minimal config parses") {
    const RunConfig cfg = parse_config(minimal_doc());
    CHECK(cfg.model.m == 1);
    CHECK(cfg.alpha == std::vector<double>{0.95});
    CHECK(cfg.n == 1000);
    CHECK(cfg.seed == 42);
    const auto& ts = std::get<covar::TwoStepSettings>(cfg.estimator);
    CHECK(ts.rule.kind == covar::BandwidthRule::Kind::power_gamma);
    CHECK(ts.rule.gamma == 1.0);
}

TEST_CASE("dump/parse round trip preserves the digest") {
    const RunConfig cfg = parse_config(minimal_doc());
    const json dumped = covar::dump_config(cfg);
    const RunConfig reparsed = parse_config(dumped);
    CHECK(covar::config_digest(cfg) == covar::config_digest(reparsed));
}

TEST_CASE("the digest tracks every field") {
    const RunConfig base = parse_config(minimal_doc());

    auto doc = minimal_doc();
    doc["beta"] = 0.9;
    CHECK(covar::config_digest(parse_config(doc)) != covar::config_digest(base));

    doc = minimal_doc();
    doc["model"]["r_y"] = -0.2;
    CHECK(covar::config_digest(parse_config(doc)) != covar::config_digest(base));

    doc = minimal_doc();
    doc["seed"] = 43;
    CHECK(covar::config_digest(parse_config(doc)) != covar::config_digest(base));
}

TEST_CASE("gamma outside (0,2) is rejected by name") {
    auto doc = minimal_doc();
    doc["estimator"]["bandwidth"]["gamma"] = 2.5;
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("gamma") != std::string::npos);
    }
}

TEST_CASE("alpha levels must be interior probabilities") {
    auto doc = minimal_doc();
    doc["alpha"] = {1.0};
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("alpha") != std::string::npos);
    }
}

TEST_CASE("alpha length must match the model dimension") {
    auto doc = minimal_doc();
    doc["alpha"] = {0.9, 0.9};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("estimator defaults apply when the block is absent") {
    auto doc = minimal_doc();
    doc.erase("estimator");
    const RunConfig cfg = parse_config(doc);
    const auto& ts = std::get<covar::TwoStepSettings>(cfg.estimator);
    CHECK(ts.spec.family == covar::KernelFamily::gaussian);
    CHECK(ts.nu == 0.05);
}

TEST_CASE("batching estimator config") {
    auto doc = minimal_doc();
    doc["estimator"] = {{"type", "batching"}, {"batches", 500}};
    const RunConfig cfg = parse_config(doc);
    const auto& bs = std::get<covar::BatchingSettings>(cfg.estimator);
    CHECK_FALSE(bs.batches.use_sqrt);
    CHECK(bs.batches.fixed_k == 500);
}

TEST_CASE("study block round trip") {
    auto doc = minimal_doc();
    doc["study"] = {{"n_values", {100, 1000}}, {"replications", 7}, {"true_value", 1.2051}};
    const RunConfig cfg = parse_config(doc);
    REQUIRE(cfg.n_values.has_value());
    CHECK(cfg.n_values->size() == 2);
    CHECK(cfg.replications == 7);
    CHECK(cfg.true_value == 1.2051);
    const auto sc = covar::to_study_config(cfg);
    CHECK(sc.base_seed == 42);

    doc["study"]["n_values"] = {1000, 100};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("study view requires study fields") {
    const RunConfig cfg = parse_config(minimal_doc());
    CHECK_THROWS_AS(covar::to_study_config(cfg), ConfigError);
}

TEST_CASE("unknown kernels and bandwidth rules are rejected") {
    auto doc = minimal_doc();
    doc["estimator"]["kernel"] = "triangular";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["estimator"]["bandwidth"] = {{"rule", "plugin"}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
}
