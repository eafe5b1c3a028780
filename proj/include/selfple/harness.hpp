#pragma once

// Experiment orchestration: Monte Carlo sweeps over shadowing and
// density, the detection calibration study, the routing analysis, and
// single-shot estimation from an RSS log. Every experiment is a pure
// function of (config, seed); per-trial generators are derived from the
// master seed with derive_seed(master, cell * 2^20 + trial), so trials
// are reproducible independently and in any order.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "selfple/channel.hpp"
#include "selfple/detect.hpp"
#include "selfple/estimators.hpp"
#include "selfple/routing.hpp"

namespace selfple::harness {

struct ExperimentConfig {
    int dimension = 2;
    double range_m = 200.0;      // theoretical transmission range
    double field_factor = 2.0;   // deployment radius = field_factor * range
    double density = 0.005;      // nodes per m^d for the shadow sweep
    std::vector<double> gammas = {2.0, 3.0, 4.0, 5.0, 6.0};
    std::vector<double> sigmas = {2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
    std::vector<double> densities = {0.002, 0.005, 0.01};
    double density_sweep_sigma = 12.0; // shadowing held fixed in the density sweep
    int trials = 500;
    std::uint64_t seed = 1;
    double tx_power_dbm = 0.0;
    double carrier_freq_hz = 2401e6;
    double ref_distance_m = 1.0;
    std::optional<double> prop_constant_db; // default: free-space at the carrier

    // Detection calibration.
    double detect_level = 0.05;
    int detect_window = 25;
    double detect_sigma = 6.0;
    double detect_gamma = 2.0;
    int detect_windows = 10000;
    double detect_reported_range = 100.0;
    double detect_attacker_ratio = 2.0; // true range / reported range

    // Routing.
    std::string routing_mode = "analytic"; // "analytic" or "mc"
    std::vector<double> alphas = {0.5, 1.0, 1.5, 2.0};
    std::vector<double> routing_gammas = {1.5, 2.0, 4.0};
    std::vector<double> routing_sigmas = {0.0, 8.0};
    double routing_density = 0.001;
    int routing_k_max = 10;
    int routing_trials = 20000;
};

// Flat key=value config file ('#' starts a comment). Unknown keys are an
// error. Values with commas parse as lists.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& config, const std::string& key, const std::string& value);

// sqrt(mean(((estimate - gamma) / gamma)^2)) over the trial estimates.
double normalized_rmse(const std::vector<double>& estimates, double true_gamma);

struct RmseRow {
    std::string method;
    double gamma = 0.0;
    double sigma = 0.0;
    double density = 0.0;
    double normalized_rmse = 0.0;
    int trials_used = 0;
    int trials_degenerate = 0;
};

// One Monte Carlo cell: estimates from all methods at fixed
// (gamma, sigma, density). Exposed for the sweeps and the acceptance
// tests.
struct CellEstimates {
    std::vector<double> tls;
    std::vector<double> wtls;
    std::vector<double> c_ple;
    int degenerate_tls = 0;
    int degenerate_wtls = 0;
    int degenerate_c_ple = 0;
};

CellEstimates run_cell(const ExperimentConfig& config, double gamma, double sigma, double density,
                       std::uint64_t cell_index);

// Shadow sweep: fixed density, every (gamma, sigma) combination.
std::vector<RmseRow> run_shadow_sweep(const ExperimentConfig& config);

// Density sweep: sigma fixed at config.density_sweep_sigma, every
// (gamma, density) combination.
std::vector<RmseRow> run_density_sweep(const ExperimentConfig& config);

std::string rmse_csv_header();
std::string to_csv(const std::vector<RmseRow>& rows);

struct DetectRow {
    std::string scenario; // honest, attacker, equal_range
    double level = 0.0;
    int window = 0;
    double sigma = 0.0;
    std::optional<double> false_alarm_rate; // H0-true scenarios
    std::optional<double> detection_rate;   // attacker scenario
    int windows = 0;
};

std::vector<DetectRow> run_detect_calibration(const ExperimentConfig& config,
                                              std::vector<detect::EventRow>* events = nullptr);

std::string detect_csv_header();
std::string to_csv(const std::vector<DetectRow>& rows);

struct RoutingRow {
    std::string mode; // analytic or mc
    int k = 0;
    double alpha = 0.0;
    std::optional<double> gamma; // mc only
    std::optional<double> sigma; // mc only
    double value = 0.0;
    std::optional<double> std_error; // mc only
};

std::vector<RoutingRow> run_routing(const ExperimentConfig& config);

std::string routing_csv_header();
std::string to_csv(const std::vector<RoutingRow>& rows);

// Parses one RSS value (dB) per line; blank lines and '#' comments are
// skipped. Throws InputFormatError naming the offending 1-based line.
struct InputFormatError : std::runtime_error {
    explicit InputFormatError(const std::string& what) : std::runtime_error(what) {}
};

std::vector<double> parse_rss_file(std::istream& in);
std::vector<double> parse_rss_file(const std::string& path);

// Ranks the values, builds the pair set and runs the chosen estimator
// (TlsClosed, TlsSvd or Wtls).
estimators::EstimateReport single_estimate(const std::vector<double>& rss_db, int dimension,
                                           estimators::Method method);

std::string format_report(const estimators::EstimateReport& report);

void write_text_file(const std::string& path, const std::string& content);

} // namespace selfple::harness
