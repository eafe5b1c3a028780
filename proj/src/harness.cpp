#include "selfple/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "selfple/regress.hpp"
#include "selfple/rng.hpp"
#include "selfple/special.hpp"

namespace selfple::harness {

namespace {

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string fmt_opt(const std::optional<double>& value) {
    return value ? fmt(*value) : std::string{};
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number '" + s + "' for " + context);
    }
}

std::vector<double> parse_list(const std::string& s, const std::string& context) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(trim(item), context));
    if (out.empty()) throw std::invalid_argument("empty list for " + context);
    return out;
}

channel::ChannelParams make_channel(const ExperimentConfig& config, double gamma, double sigma) {
    channel::ChannelParams ch;
    ch.ple = gamma;
    ch.shadow_sigma = sigma;
    ch.ref_distance = config.ref_distance_m;
    ch.prop_constant_db = config.prop_constant_db
                              ? *config.prop_constant_db
                              : channel::friis_prop_constant_db(config.carrier_freq_hz, config.ref_distance_m);
    ch.tx_power_dbm = config.tx_power_dbm;
    return ch;
}

constexpr std::uint64_t kTrialStride = 1ull << 20;

} // namespace

void apply_config_line(ExperimentConfig& config, const std::string& key, const std::string& value) {
    if (key == "dimension") config.dimension = static_cast<int>(parse_double(value, key));
    else if (key == "range") config.range_m = parse_double(value, key);
    else if (key == "field_factor") config.field_factor = parse_double(value, key);
    else if (key == "density") config.density = parse_double(value, key);
    else if (key == "gammas") config.gammas = parse_list(value, key);
    else if (key == "sigmas") config.sigmas = parse_list(value, key);
    else if (key == "densities") config.densities = parse_list(value, key);
    else if (key == "density_sweep_sigma") config.density_sweep_sigma = parse_double(value, key);
    else if (key == "trials") config.trials = static_cast<int>(parse_double(value, key));
    else if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_double(value, key));
    else if (key == "tx_power_dbm") config.tx_power_dbm = parse_double(value, key);
    else if (key == "carrier_freq_hz") config.carrier_freq_hz = parse_double(value, key);
    else if (key == "ref_distance") config.ref_distance_m = parse_double(value, key);
    else if (key == "prop_constant_db") config.prop_constant_db = parse_double(value, key);
    else if (key == "detect_level") config.detect_level = parse_double(value, key);
    else if (key == "detect_window") config.detect_window = static_cast<int>(parse_double(value, key));
    else if (key == "detect_sigma") config.detect_sigma = parse_double(value, key);
    else if (key == "detect_gamma") config.detect_gamma = parse_double(value, key);
    else if (key == "detect_windows") config.detect_windows = static_cast<int>(parse_double(value, key));
    else if (key == "detect_reported_range") config.detect_reported_range = parse_double(value, key);
    else if (key == "detect_attacker_ratio") config.detect_attacker_ratio = parse_double(value, key);
    else if (key == "routing_mode") config.routing_mode = value;
    else if (key == "alphas") config.alphas = parse_list(value, key);
    else if (key == "routing_gammas") config.routing_gammas = parse_list(value, key);
    else if (key == "routing_sigmas") config.routing_sigmas = parse_list(value, key);
    else if (key == "routing_density") config.routing_density = parse_double(value, key);
    else if (key == "routing_k_max") config.routing_k_max = static_cast<int>(parse_double(value, key));
    else if (key == "routing_trials") config.routing_trials = static_cast<int>(parse_double(value, key));
    else throw std::invalid_argument("unknown config key '" + key + "'");
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_config_line(config, key, value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return config;
}

double normalized_rmse(const std::vector<double>& estimates, double true_gamma) {
    if (estimates.empty())
        throw std::invalid_argument("normalized_rmse: no estimates");
    if (!(true_gamma > 0.0))
        throw std::invalid_argument("normalized_rmse: true gamma must be positive");
    double acc = 0.0;
    for (double g : estimates) {
        const double rel = (g - true_gamma) / true_gamma;
        acc += rel * rel;
    }
    return std::sqrt(acc / estimates.size());
}

CellEstimates run_cell(const ExperimentConfig& config, double gamma, double sigma, double density,
                       std::uint64_t cell_index) {
    geometry::SpaceConfig space{config.dimension, config.range_m * config.field_factor, density};
    channel::ChannelParams ch = make_channel(config, gamma, sigma);
    const double thres1 = channel::calibrated_sensitivity_dbm(ch, config.range_m);
    const double thres2 = thres1 + 10.0 * std::log10(2.0); // doubled linear power
    ch.rx_sensitivity_dbm = thres1;
    channel::ChannelParams ch2 = ch;
    ch2.rx_sensitivity_dbm = thres2;

    CellEstimates cell;
    cell.tls.reserve(config.trials);
    cell.wtls.reserve(config.trials);
    cell.c_ple.reserve(config.trials);

    for (int t = 0; t < config.trials; ++t) {
        Rng gen(derive_seed(config.seed, cell_index * kTrialStride + static_cast<std::uint64_t>(t)));
        const auto field = geometry::deploy_uniform(space, gen);
        const auto obs1 = channel::observe_neighborhood(field, ch, gen);

        if (obs1.size() >= 2) {
            const auto ranked = regress::rank_rss(obs1);
            const auto samples = regress::build_samples(ranked, config.dimension);
            const auto tls_report = estimators::tls_closed_form(samples);
            if (tls_report.degenerate) ++cell.degenerate_tls;
            else cell.tls.push_back(tls_report.gamma_hat);
            const auto wtls_report = estimators::wtls(samples, estimators::build_weights(samples));
            if (wtls_report.degenerate) ++cell.degenerate_wtls;
            else cell.wtls.push_back(wtls_report.gamma_hat);
        } else {
            ++cell.degenerate_tls;
            ++cell.degenerate_wtls;
        }

        // The baseline re-observes with the doubled sensitivity and
        // compares the two neighborhood cardinalities.
        const auto obs2 = channel::observe_neighborhood(field, ch2, gen);
        const int n1 = static_cast<int>(obs1.size());
        const int n2 = static_cast<int>(obs2.size());
        if (n1 >= 1 && n2 >= 1 && n1 != n2) {
            const auto c_report = estimators::c_ple(n1, n2, thres1, thres2);
            if (c_report.degenerate) ++cell.degenerate_c_ple;
            else cell.c_ple.push_back(c_report.gamma_hat);
        } else {
            ++cell.degenerate_c_ple;
        }
    }
    return cell;
}

namespace {

void append_rows(std::vector<RmseRow>& rows, const CellEstimates& cell, double gamma, double sigma,
                 double density, int trials) {
    const auto make_row = [&](const char* method, const std::vector<double>& estimates,
                              int degenerate) {
        RmseRow row;
        row.method = method;
        row.gamma = gamma;
        row.sigma = sigma;
        row.density = density;
        row.normalized_rmse = estimates.empty() ? 0.0 : normalized_rmse(estimates, gamma);
        row.trials_used = trials - degenerate;
        row.trials_degenerate = degenerate;
        rows.push_back(row);
    };
    make_row("tls", cell.tls, cell.degenerate_tls);
    make_row("wtls", cell.wtls, cell.degenerate_wtls);
    make_row("c_ple", cell.c_ple, cell.degenerate_c_ple);
}

} // namespace

std::vector<RmseRow> run_shadow_sweep(const ExperimentConfig& config) {
    if (config.trials < 1 || config.gammas.empty() || config.sigmas.empty())
        throw std::invalid_argument("run_shadow_sweep: need trials >= 1 and non-empty sweep lists");
    std::vector<RmseRow> rows;
    std::uint64_t cell_index = 0;
    for (double gamma : config.gammas) {
        for (double sigma : config.sigmas) {
            const auto cell = run_cell(config, gamma, sigma, config.density, cell_index++);
            append_rows(rows, cell, gamma, sigma, config.density, config.trials);
        }
    }
    return rows;
}

std::vector<RmseRow> run_density_sweep(const ExperimentConfig& config) {
    if (config.trials < 1 || config.gammas.empty() || config.densities.empty())
        throw std::invalid_argument("run_density_sweep: need trials >= 1 and non-empty sweep lists");
    std::vector<RmseRow> rows;
    std::uint64_t cell_index = 0;
    for (double gamma : config.gammas) {
        for (double density : config.densities) {
            const auto cell =
                run_cell(config, gamma, config.density_sweep_sigma, density, cell_index++);
            append_rows(rows, cell, gamma, config.density_sweep_sigma, density, config.trials);
        }
    }
    return rows;
}

std::string rmse_csv_header() {
    return "method,gamma,sigma,density,normalized_rmse,trials_used,trials_degenerate";
}

std::string to_csv(const std::vector<RmseRow>& rows) {
    std::string out = rmse_csv_header() + "\n";
    for (const auto& r : rows) {
        out += r.method + ',' + fmt(r.gamma) + ',' + fmt(r.sigma) + ',' + fmt(r.density) + ',' +
               fmt(r.normalized_rmse) + ',' + std::to_string(r.trials_used) + ',' +
               std::to_string(r.trials_degenerate) + '\n';
    }
    return out;
}

std::vector<DetectRow> run_detect_calibration(const ExperimentConfig& config,
                                              std::vector<detect::EventRow>* events) {
    if (config.detect_windows < 1)
        throw std::invalid_argument("run_detect_calibration: need at least one window");

    channel::ChannelParams ch = make_channel(config, config.detect_gamma, config.detect_sigma);

    detect::ReferenceIdentity reference;
    reference.node_id = "reference";
    reference.own_location = geometry::Point{0.0, 0.0, 0.0};
    reference.self_gamma = config.detect_gamma;
    reference.shadow_sigma = config.detect_sigma;

    const double reported_range = config.detect_reported_range;
    const geometry::Point reported{reported_range, 0.0, 0.0};
    const double c3 = detect::reference_c3_db(ch.tx_power_dbm, ch.prop_constant_db,
                                              reference.self_gamma, ch.ref_distance);
    const double reference_rss = detect::reference_rss_db(reference, reported, c3);

    struct Scenario {
        const char* name;
        geometry::Point true_location;
    };
    const Scenario scenarios[] = {
        {"honest", {reported_range, 0.0, 0.0}},
        {"attacker", {reported_range * config.detect_attacker_ratio, 0.0, 0.0}},
        {"equal_range", {0.0, reported_range, 0.0}},
    };

    std::vector<DetectRow> rows;
    std::uint64_t scenario_index = 0;
    for (const auto& scenario : scenarios) {
        const double true_range = geometry::distance(reference.own_location, scenario.true_location);
        int rejections = 0;
        for (int w = 0; w < config.detect_windows; ++w) {
            Rng gen(derive_seed(config.seed,
                                scenario_index * kTrialStride + static_cast<std::uint64_t>(w)));
            detect::SuspectRecord record;
            record.suspect_id = scenario.name;
            record.reported_location = reported;
            for (int i = 0; i < config.detect_window; ++i) {
                const double actual = channel::sample_rss(true_range, ch, gen).rss_db;
                detect::record_observation(record, i, actual, reference_rss);
            }
            const auto result = detect::np_range_test(record, config.detect_sigma,
                                                      config.detect_window, config.detect_level);
            if (result.decision == detect::Decision::Attacker) ++rejections;
            if (events) {
                detect::EventRow event;
                event.time = w;
                event.detector_id = reference.node_id;
                event.suspect_id = scenario.name;
                event.rho = result.rho;
                event.threshold = std::sqrt(result.threshold_sq);
                event.decision = result.decision;
                events->push_back(event);
            }
        }
        DetectRow row;
        row.scenario = scenario.name;
        row.level = config.detect_level;
        row.window = config.detect_window;
        row.sigma = config.detect_sigma;
        row.windows = config.detect_windows;
        const double rate = static_cast<double>(rejections) / config.detect_windows;
        if (std::string(scenario.name) == "attacker") row.detection_rate = rate;
        else row.false_alarm_rate = rate;
        rows.push_back(row);
        ++scenario_index;
    }
    return rows;
}

std::string detect_csv_header() {
    return "scenario,level,I,sigma,false_alarm_rate,detection_rate,windows";
}

std::string to_csv(const std::vector<DetectRow>& rows) {
    std::string out = detect_csv_header() + "\n";
    for (const auto& r : rows) {
        out += r.scenario + ',' + fmt(r.level) + ',' + std::to_string(r.window) + ',' + fmt(r.sigma) +
               ',' + fmt_opt(r.false_alarm_rate) + ',' + fmt_opt(r.detection_rate) + ',' +
               std::to_string(r.windows) + '\n';
    }
    return out;
}

std::vector<RoutingRow> run_routing(const ExperimentConfig& config) {
    std::vector<RoutingRow> rows;
    if (config.routing_mode == "analytic") {
        for (double alpha : config.alphas) {
            for (int k = 1; k <= config.routing_k_max; ++k) {
                RoutingRow row;
                row.mode = "analytic";
                row.k = k;
                row.alpha = alpha;
                row.value = routing::k_efficiency(k, alpha);
                rows.push_back(row);
            }
        }
    } else if (config.routing_mode == "mc") {
        routing::RoutingScenario scenario;
        scenario.space =
            geometry::SpaceConfig{config.dimension, config.range_m, config.routing_density};
        scenario.k_max = config.routing_k_max;
        std::uint64_t cell = 0;
        for (double gamma : config.routing_gammas) {
            for (double sigma : config.routing_sigmas) {
                scenario.gamma = gamma;
                scenario.shadow_sigma = sigma;
                Rng gen(derive_seed(config.seed, cell++));
                const auto stats = routing::simulate_kth_routing(scenario, config.routing_trials, gen);
                for (const auto& s : stats) {
                    RoutingRow row;
                    row.mode = "mc";
                    row.k = s.k;
                    row.alpha = gamma / config.dimension;
                    row.gamma = gamma;
                    row.sigma = sigma;
                    row.value = s.mean_per_hop_loss;
                    row.std_error = s.std_error;
                    rows.push_back(row);
                }
            }
        }
    } else {
        throw std::invalid_argument("run_routing: mode must be 'analytic' or 'mc'");
    }
    return rows;
}

std::string routing_csv_header() { return "mode,k,alpha,gamma,sigma,value,stderr"; }

std::string to_csv(const std::vector<RoutingRow>& rows) {
    std::string out = routing_csv_header() + "\n";
    for (const auto& r : rows) {
        out += r.mode + ',' + std::to_string(r.k) + ',' + fmt(r.alpha) + ',' + fmt_opt(r.gamma) +
               ',' + fmt_opt(r.sigma) + ',' + fmt(r.value) + ',' + fmt_opt(r.std_error) + '\n';
    }
    return out;
}

std::vector<double> parse_rss_file(std::istream& in) {
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        try {
            std::size_t pos = 0;
            const double v = std::stod(stripped, &pos);
            if (pos != stripped.size()) throw std::invalid_argument(stripped);
            values.push_back(v);
        } catch (const std::exception&) {
            throw InputFormatError("line " + std::to_string(line_no) + ": cannot parse '" + stripped +
                                   "' as an RSS value in dB");
        }
    }
    return values;
}

std::vector<double> parse_rss_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputFormatError("cannot open RSS file '" + path + "'");
    return parse_rss_file(in);
}

estimators::EstimateReport single_estimate(const std::vector<double>& rss_db, int dimension,
                                           estimators::Method method) {
    if (rss_db.size() < 2)
        throw std::invalid_argument("single_estimate: need at least two RSS values");
    std::vector<channel::RssObservation> observations;
    observations.reserve(rss_db.size());
    for (std::size_t i = 0; i < rss_db.size(); ++i)
        observations.push_back(channel::RssObservation{static_cast<int>(i), rss_db[i], 0.0});
    const auto ranked = regress::rank_rss(observations);
    const auto samples = regress::build_samples(ranked, dimension);
    switch (method) {
    case estimators::Method::TlsSvd:
        return estimators::tls_svd(samples);
    case estimators::Method::Wtls:
        return estimators::wtls(samples, estimators::build_weights(samples));
    case estimators::Method::TlsClosed:
        return estimators::tls_closed_form(samples);
    default:
        throw std::invalid_argument("single_estimate: method must be tls, tls_svd or wtls");
    }
}

std::string format_report(const estimators::EstimateReport& report) {
    std::string out;
    out += "method: ";
    out += estimators::method_name(report.method);
    out += "\ngamma_hat: " + (report.degenerate ? std::string("n/a") : fmt(report.gamma_hat));
    out += "\nsamples: " + std::to_string(report.sample_count);
    out += "\neta: " + (report.eta ? fmt(*report.eta) : std::string("n/a"));
    out += "\ndegenerate: ";
    out += report.degenerate ? "yes (" + report.degenerate_reason + ")" : "no";
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

} // namespace selfple::harness
