#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "selfple/harness.hpp"

using namespace selfple;

TEST_CASE("normalized rmse on worked values") {
    CHECK(harness::normalized_rmse({3.0, 3.0, 3.0}, 3.0) == doctest::Approx(0.0));
    CHECK(harness::normalized_rmse({4.0}, 2.0) == doctest::Approx(1.0));
    CHECK(harness::normalized_rmse({1.8, 2.2}, 2.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(harness::normalized_rmse({}, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(harness::normalized_rmse({2.0}, 0.0), std::invalid_argument);
}

TEST_CASE("trial accounting adds up per row") {
    harness::ExperimentConfig config;
    config.trials = 25;
    config.gammas = {3.0};
    config.sigmas = {6.0};
    config.density = 0.002;
    config.seed = 4;
    const auto rows = harness::run_shadow_sweep(config);
    REQUIRE(rows.size() == 3); // one per method
    for (const auto& row : rows) {
        CHECK(row.trials_used + row.trials_degenerate == config.trials);
        CHECK(row.normalized_rmse >= 0.0);
    }
}

TEST_CASE("sweeps are deterministic functions of the seed") {
    harness::ExperimentConfig config;
    config.trials = 10;
    config.gammas = {2.0, 4.0};
    config.sigmas = {4.0};
    config.density = 0.002;
    config.seed = 11;
    const auto a = harness::to_csv(harness::run_shadow_sweep(config));
    const auto b = harness::to_csv(harness::run_shadow_sweep(config));
    CHECK(a == b);
    config.seed = 12;
    const auto c = harness::to_csv(harness::run_shadow_sweep(config));
    CHECK(a != c);
}

TEST_CASE("rmse csv schema is stable and machine-readable") {
    harness::ExperimentConfig config;
    config.trials = 5;
    config.gammas = {2.0};
    config.sigmas = {4.0};
    config.density = 0.002;
    const auto csv = harness::to_csv(harness::run_shadow_sweep(config));
    std::stringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "method,gamma,sigma,density,normalized_rmse,trials_used,trials_degenerate");
    std::string line;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        int commas = 0;
        for (char ch : line)
            if (ch == ',') ++commas;
        CHECK(commas == 6);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("density sweep holds sigma fixed and walks the density grid") {
    harness::ExperimentConfig config;
    config.trials = 5;
    config.gammas = {3.0};
    config.densities = {0.002, 0.005};
    config.density_sweep_sigma = 8.0;
    const auto rows = harness::run_density_sweep(config);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) CHECK(row.sigma == 8.0);
    CHECK(rows.front().density == 0.002);
    CHECK(rows.back().density == 0.005);
}

TEST_CASE("detect calibration emits one row per scenario") {
    harness::ExperimentConfig config;
    config.detect_windows = 200;
    config.seed = 3;
    std::vector<detect::EventRow> events;
    const auto rows = harness::run_detect_calibration(config, &events);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].scenario == "honest");
    CHECK(rows[1].scenario == "attacker");
    CHECK(rows[2].scenario == "equal_range");
    CHECK(rows[0].false_alarm_rate.has_value());
    CHECK(!rows[0].detection_rate.has_value());
    CHECK(rows[1].detection_rate.has_value());
    CHECK(*rows[1].detection_rate > 0.9); // 2x-range attacker is easy at the defaults
    CHECK(events.size() == 3 * 200);
    const auto csv = harness::to_csv(rows);
    CHECK(csv.rfind("scenario,level,I,sigma,false_alarm_rate,detection_rate,windows\n", 0) == 0);
}

TEST_CASE("an equal-range attacker evades the range test at about the test level") {
    harness::ExperimentConfig config;
    config.detect_windows = 2000;
    config.seed = 21;
    const auto rows = harness::run_detect_calibration(config);
    REQUIRE(rows[2].scenario == "equal_range");
    REQUIRE(rows[2].false_alarm_rate.has_value());
    // The fake location differs but the range matches, so rejections sit
    // near the configured significance level.
    CHECK(*rows[2].false_alarm_rate > 0.03);
    CHECK(*rows[2].false_alarm_rate < 0.07);
}

TEST_CASE("routing rows cover both modes") {
    harness::ExperimentConfig config;
    config.routing_mode = "analytic";
    config.alphas = {0.5, 1.0};
    config.routing_k_max = 4;
    auto rows = harness::run_routing(config);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CHECK(row.mode == "analytic");
        CHECK(!row.gamma.has_value());
    }
    // alpha = 1 rows are identically 1.
    for (const auto& row : rows)
        if (row.alpha == 1.0) CHECK(row.value == doctest::Approx(1.0).epsilon(1e-10));

    config.routing_mode = "mc";
    config.routing_gammas = {2.0};
    config.routing_sigmas = {0.0};
    config.routing_trials = 50;
    config.routing_k_max = 3;
    rows = harness::run_routing(config);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.mode == "mc");
        CHECK(row.gamma == 2.0);
        CHECK(row.std_error.has_value());
    }
    config.routing_mode = "bogus";
    CHECK_THROWS_AS(harness::run_routing(config), std::invalid_argument);
}

TEST_CASE("rss file parsing reports the offending line") {
    std::stringstream good("-50.0\n# comment\n\n-60.5\n-70\n");
    const auto values = harness::parse_rss_file(good);
    REQUIRE(values.size() == 3);
    CHECK(values[1] == -60.5);

    std::stringstream bad("-50.0\n-60.x\n");
    try {
        harness::parse_rss_file(bad);
        FAIL("expected InputFormatError");
    } catch (const harness::InputFormatError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("single estimate from a synthetic noise-free log") {
    // gamma = 3 field with no shadowing: estimates should land within 5%.
    harness::ExperimentConfig config;
    const auto cell = harness::run_cell(config, 3.0, 0.0, 0.01, 900);
    REQUIRE(!cell.tls.empty());

    // Same pipeline through the file-facing entry point.
    geometry::SpaceConfig space{2, 200.0, 0.01};
    Rng gen(2718);
    const auto field = geometry::deploy_uniform(space, gen);
    channel::ChannelParams params;
    params.ple = 3.0;
    const auto obs = channel::observe_neighborhood(field, params, gen);
    std::vector<double> rss;
    for (const auto& o : obs) rss.push_back(o.rss_db);
    REQUIRE(rss.size() >= 200);
    for (auto method : {estimators::Method::TlsClosed, estimators::Method::TlsSvd,
                        estimators::Method::Wtls}) {
        const auto report = harness::single_estimate(rss, 2, method);
        REQUIRE(!report.degenerate);
        CHECK(report.gamma_hat == doctest::Approx(3.0).epsilon(0.05));
    }
    CHECK_THROWS_AS(harness::single_estimate({-50.0}, 2, estimators::Method::TlsClosed),
                    std::invalid_argument);
}

TEST_CASE("config files parse, override and reject unknown keys") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "trials = 42\n";
        out << "gammas = 2, 3.5\n";
        out << "seed=77\n";
        out << "routing_mode = mc\n";
    }
    const auto config = harness::parse_config_file(path);
    CHECK(config.trials == 42);
    CHECK(config.gammas == std::vector<double>{2.0, 3.5});
    CHECK(config.seed == 77);
    CHECK(config.routing_mode == "mc");
    std::remove(path.c_str());

    harness::ExperimentConfig c;
    CHECK_THROWS_AS(harness::apply_config_line(c, "no_such_key", "1"), std::invalid_argument);
    CHECK_THROWS_AS(harness::apply_config_line(c, "trials", "abc"), std::invalid_argument);
}

TEST_CASE("report formatting names the method and diagnostics") {
    const auto report = harness::single_estimate({-40.0, -46.0, -50.0, -52.0}, 2,
                                                 estimators::Method::TlsClosed);
    const auto text = harness::format_report(report);
    CHECK(text.find("method: tls") != std::string::npos);
    CHECK(text.find("gamma_hat:") != std::string::npos);
    CHECK(text.find("samples: 6") != std::string::npos);
    CHECK(text.find("eta:") != std::string::npos);
}
