#include "selfple/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace selfple::channel {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;
} // namespace

void validate(const ChannelParams& params) {
    if (!(params.shadow_sigma >= 0.0))
        throw std::invalid_argument("ChannelParams: shadow_sigma must be >= 0");
    if (!(params.ref_distance > 0.0))
        throw std::invalid_argument("ChannelParams: ref_distance must be positive");
    if (!(params.tx_power_jitter_sigma >= 0.0))
        throw std::invalid_argument("ChannelParams: tx_power_jitter_sigma must be >= 0");
    if (params.nakagami_m && !(*params.nakagami_m > 0.0))
        throw std::invalid_argument("ChannelParams: nakagami_m must be positive");
    if (params.slots < 1)
        throw std::invalid_argument("ChannelParams: slots must be >= 1");
}

std::vector<std::string> parameter_warnings(const ChannelParams& params) {
    std::vector<std::string> warnings;
    if (params.ple < 2.0 || params.ple > 6.0)
        warnings.push_back("path-loss exponent " + std::to_string(params.ple) +
                           " lies outside the typical 2..6 range");
    return warnings;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

double friis_prop_constant_db(double carrier_freq_hz, double ref_distance_m) {
    if (!(carrier_freq_hz > 0.0) || !(ref_distance_m > 0.0))
        throw std::invalid_argument("friis_prop_constant_db: frequency and distance must be positive");
    const double wavelength = kSpeedOfLight / carrier_freq_hz;
    return 20.0 * std::log10(wavelength / (4.0 * kPi * ref_distance_m));
}

double calibrated_sensitivity_dbm(const ChannelParams& params, double range_m) {
    return params.tx_power_dbm - mean_path_loss_db(range_m, params);
}

double mean_path_loss_db(double r, const ChannelParams& params) {
    validate(params);
    if (r < params.ref_distance)
        throw std::domain_error("mean_path_loss_db: distance below the far-field reference");
    return 10.0 * params.ple * std::log10(r) - params.prop_constant_db -
           10.0 * params.ple * std::log10(params.ref_distance);
}

RssObservation sample_rss(double r, const ChannelParams& params, Rng& gen) {
    double tx = params.tx_power_dbm;
    if (params.tx_power_jitter_sigma > 0.0)
        tx += gen.normal(0.0, params.tx_power_jitter_sigma);
    double rss = tx - mean_path_loss_db(r, params);
    if (params.shadow_sigma > 0.0)
        rss -= gen.normal(0.0, params.shadow_sigma);
    if (params.nakagami_m) {
        const double mean_watts = dbm_to_watts(rss);
        rss = watts_to_dbm(average_over_slots(mean_watts, *params.nakagami_m, params.slots, gen));
    }
    return RssObservation{-1, rss, r};
}

double sample_instantaneous_power(double mean_power_watts, double m, Rng& gen) {
    if (!(mean_power_watts > 0.0))
        throw std::invalid_argument("sample_instantaneous_power: mean power must be positive");
    if (!(m > 0.0))
        throw std::invalid_argument("sample_instantaneous_power: m must be positive");
    // Gamma with shape m and mean E(p): scale = E(p) / m.
    return gen.gamma(m) * mean_power_watts / m;
}

double average_over_slots(double mean_power_watts, double m, int slots, Rng& gen) {
    if (slots < 1)
        throw std::invalid_argument("average_over_slots: slots must be >= 1");
    double acc = 0.0;
    for (int k = 0; k < slots; ++k)
        acc += sample_instantaneous_power(mean_power_watts, m, gen);
    return acc / slots;
}

std::vector<RssObservation> observe_neighborhood(const geometry::DeploymentField& field,
                                                 const ChannelParams& params, Rng& gen) {
    validate(params);
    if (field.positions.empty())
        throw std::invalid_argument("observe_neighborhood: empty field");
    std::vector<RssObservation> reachable;
    for (std::size_t i = 0; i < field.positions.size(); ++i) {
        const double r = geometry::distance(field.origin, field.positions[i]);
        const double r_eff = std::max(r, params.ref_distance);
        RssObservation obs = sample_rss(r_eff, params, gen);
        obs.node_index = static_cast<int>(i);
        obs.true_distance = r;
        if (obs.rss_db > params.rx_sensitivity_dbm)
            reachable.push_back(obs);
    }
    return reachable;
}

} // namespace selfple::channel
