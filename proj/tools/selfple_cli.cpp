// Command-line front end: Monte Carlo sweeps, the routing analysis, the
// detection calibration study, and one-shot estimation from an RSS log.
// Exit codes: 0 success, 2 configuration error, 3 input-format error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "selfple/channel.hpp"
#include "selfple/harness.hpp"

namespace {

using selfple::harness::ExperimentConfig;

struct CommonFlags {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> dimension;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags, const std::string& default_out) {
    cmd->add_option("--config", flags.config_path, "flat key=value config file");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per cell");
    cmd->add_option("--dimension", flags.dimension, "deployment dimension (1, 2 or 3)")
        ->check(CLI::Range(1, 3));
    flags.out_path = default_out;
    cmd->add_option("--out", flags.out_path, "output CSV path");
}

// Config file first, then flags (flags win).
ExperimentConfig resolve_config(const CommonFlags& flags) {
    ExperimentConfig config;
    if (flags.config_path)
        config = selfple::harness::parse_config_file(*flags.config_path);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.trials) config.trials = *flags.trials;
    if (flags.dimension) config.dimension = *flags.dimension;
    return config;
}

void warn_about_parameters(const ExperimentConfig& config, const std::vector<double>& gammas) {
    for (double gamma : gammas) {
        selfple::channel::ChannelParams ch;
        ch.ple = gamma;
        ch.ref_distance = config.ref_distance_m;
        for (const auto& warning : selfple::channel::parameter_warnings(ch))
            std::cerr << "warning: " << warning << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-estimation of the path-loss exponent from locally ranked RSS"};
    app.require_subcommand(1);

    CommonFlags shadow_flags, density_flags, routing_flags, detect_flags, estimate_flags;

    auto* shadow = app.add_subcommand("sweep-shadow", "RMSE vs shadowing deviation");
    add_common(shadow, shadow_flags, "shadow_sweep.csv");
    std::vector<double> shadow_gammas, shadow_sigmas;
    std::optional<double> shadow_density;
    shadow->add_option("--gammas", shadow_gammas, "path-loss exponents to sweep")->delimiter(',');
    shadow->add_option("--sigmas", shadow_sigmas, "shadowing deviations (dB) to sweep")->delimiter(',');
    shadow->add_option("--density", shadow_density, "node density (per m^d)");

    auto* density = app.add_subcommand("sweep-density", "RMSE vs actual node density");
    add_common(density, density_flags, "density_sweep.csv");
    std::vector<double> density_gammas, density_densities;
    std::optional<double> density_sigma;
    density->add_option("--gammas", density_gammas, "path-loss exponents to sweep")->delimiter(',');
    density->add_option("--densities", density_densities, "node densities to sweep")->delimiter(',');
    density->add_option("--sigma", density_sigma, "fixed shadowing deviation (dB)");

    auto* routing = app.add_subcommand("routing", "kth-nearest-neighbor energy analysis");
    add_common(routing, routing_flags, "routing.csv");
    std::string routing_mode;
    std::vector<double> routing_alphas, routing_gammas, routing_sigmas;
    std::optional<double> routing_density;
    std::optional<int> routing_k_max, routing_trials;
    routing->add_option("--mode", routing_mode, "analytic or mc");
    routing->add_option("--alphas", routing_alphas, "alpha grid (analytic mode)")->delimiter(',');
    routing->add_option("--gammas", routing_gammas, "path-loss exponents (mc mode)")->delimiter(',');
    routing->add_option("--sigmas", routing_sigmas, "shadowing deviations (mc mode)")->delimiter(',');
    routing->add_option("--density", routing_density, "node density (mc mode)");
    routing->add_option("--k-max", routing_k_max, "largest neighbor order k");
    routing->add_option("--mc-trials", routing_trials, "Monte Carlo trials (mc mode)");

    auto* detect = app.add_subcommand("detect", "range-test calibration study");
    add_common(detect, detect_flags, "detect.csv");
    std::optional<double> detect_level, detect_sigma, detect_gamma, detect_ratio;
    std::optional<int> detect_window, detect_windows;
    std::string events_path;
    detect->add_option("--level", detect_level, "significance level");
    detect->add_option("--sigma", detect_sigma, "shadowing deviation (dB)");
    detect->add_option("--gamma", detect_gamma, "true path-loss exponent");
    detect->add_option("--window", detect_window, "observations per test window (I)");
    detect->add_option("--windows", detect_windows, "number of Monte Carlo windows");
    detect->add_option("--attacker-ratio", detect_ratio, "true range / reported range");
    detect->add_option("--events", events_path, "also write a per-window event log CSV");

    auto* estimate = app.add_subcommand("estimate", "estimate the PLE from an RSS log");
    std::string estimate_in, estimate_method = "tls";
    estimate->add_option("--config", estimate_flags.config_path, "flat key=value config file");
    estimate->add_option("--dimension", estimate_flags.dimension, "deployment dimension (1, 2 or 3)")
        ->check(CLI::Range(1, 3));
    estimate->add_option("--in", estimate_in, "input file, one RSS value (dB) per line")->required();
    estimate->add_option("--method", estimate_method, "tls, tls-svd or wtls")
        ->check(CLI::IsMember({"tls", "tls-svd", "wtls"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (shadow->parsed()) {
            ExperimentConfig config = resolve_config(shadow_flags);
            if (!shadow_gammas.empty()) config.gammas = shadow_gammas;
            if (!shadow_sigmas.empty()) config.sigmas = shadow_sigmas;
            if (shadow_density) config.density = *shadow_density;
            warn_about_parameters(config, config.gammas);
            const auto rows = selfple::harness::run_shadow_sweep(config);
            selfple::harness::write_text_file(shadow_flags.out_path, selfple::harness::to_csv(rows));
        } else if (density->parsed()) {
            ExperimentConfig config = resolve_config(density_flags);
            if (!density_gammas.empty()) config.gammas = density_gammas;
            if (!density_densities.empty()) config.densities = density_densities;
            if (density_sigma) config.density_sweep_sigma = *density_sigma;
            warn_about_parameters(config, config.gammas);
            const auto rows = selfple::harness::run_density_sweep(config);
            selfple::harness::write_text_file(density_flags.out_path, selfple::harness::to_csv(rows));
        } else if (routing->parsed()) {
            ExperimentConfig config = resolve_config(routing_flags);
            if (!routing_mode.empty()) config.routing_mode = routing_mode;
            if (!routing_alphas.empty()) config.alphas = routing_alphas;
            if (!routing_gammas.empty()) config.routing_gammas = routing_gammas;
            if (!routing_sigmas.empty()) config.routing_sigmas = routing_sigmas;
            if (routing_density) config.routing_density = *routing_density;
            if (routing_k_max) config.routing_k_max = *routing_k_max;
            if (routing_trials) config.routing_trials = *routing_trials;
            const auto rows = selfple::harness::run_routing(config);
            selfple::harness::write_text_file(routing_flags.out_path, selfple::harness::to_csv(rows));
        } else if (detect->parsed()) {
            ExperimentConfig config = resolve_config(detect_flags);
            if (detect_level) config.detect_level = *detect_level;
            if (detect_sigma) config.detect_sigma = *detect_sigma;
            if (detect_gamma) config.detect_gamma = *detect_gamma;
            if (detect_window) config.detect_window = *detect_window;
            if (detect_windows) config.detect_windows = *detect_windows;
            if (detect_ratio) config.detect_attacker_ratio = *detect_ratio;
            std::vector<selfple::detect::EventRow> events;
            const auto rows = selfple::harness::run_detect_calibration(
                config, events_path.empty() ? nullptr : &events);
            selfple::harness::write_text_file(detect_flags.out_path, selfple::harness::to_csv(rows));
            if (!events_path.empty()) {
                std::string log = selfple::detect::event_csv_header() + "\n";
                for (const auto& event : events)
                    log += selfple::detect::to_csv_row(event) + "\n";
                selfple::harness::write_text_file(events_path, log);
            }
        } else if (estimate->parsed()) {
            ExperimentConfig config = resolve_config(estimate_flags);
            const auto values = selfple::harness::parse_rss_file(estimate_in);
            selfple::estimators::Method method = selfple::estimators::Method::TlsClosed;
            if (estimate_method == "tls-svd") method = selfple::estimators::Method::TlsSvd;
            else if (estimate_method == "wtls") method = selfple::estimators::Method::Wtls;
            const auto report = selfple::harness::single_estimate(values, config.dimension, method);
            std::cout << selfple::harness::format_report(report);
        }
    } catch (const selfple::harness::InputFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
