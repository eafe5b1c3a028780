#pragma once

// Received-signal-strength generation under large-scale path loss,
// lognormal shadowing, optional Nakagami-m small-scale fading, and
// optional per-node transmit-power deviation. All channel arithmetic is
// carried out in dB; conversions to watts happen at the boundary.

#include <optional>
#include <string>
#include <vector>

#include "selfple/geometry.hpp"
#include "selfple/rng.hpp"

namespace selfple::channel {

struct ChannelParams {
    double ple = 2.0;                 // path-loss exponent gamma
    double shadow_sigma = 0.0;        // dB standard deviation of shadowing
    double ref_distance = 1.0;        // meters, far-field reference r0
    double prop_constant_db = 0.0;    // 10 log10(C1)
    double tx_power_dbm = 0.0;        // transmit power P_t
    double rx_sensitivity_dbm = -1e9; // receiver sensitivity P_thres
    double tx_power_jitter_sigma = 0.0; // dB deviation of per-node transmit power
    std::optional<double> nakagami_m;   // small-scale fading shape; absent = off
    int slots = 1;                      // averaging window K
};

// Hard contract violations throw std::invalid_argument.
void validate(const ChannelParams& params);

// Soft advisories (e.g. a PLE outside the usual 2..6 band) are returned
// as text rather than rejected.
std::vector<std::string> parameter_warnings(const ChannelParams& params);

struct RssObservation {
    int node_index = -1;
    double rss_db = 0.0;
    // Ground truth carried for evaluation only; estimators never read it.
    double true_distance = 0.0;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Free-space propagation constant 10 log10(C1) at the given carrier
// frequency and reference distance, with unit antenna gains.
double friis_prop_constant_db(double carrier_freq_hz, double ref_distance_m = 1.0);

// Sensitivity that puts the deterministic (no shadowing) transmission
// range exactly at `range_m`.
double calibrated_sensitivity_dbm(const ChannelParams& params, double range_m);

// Deterministic attenuation at distance r:
//   10 gamma log10(r) - 10 log10(C1) - 10 gamma log10(r0).
// Throws std::domain_error for r below the reference distance.
double mean_path_loss_db(double r, const ChannelParams& params);

// One RSS draw at distance r. Draw order: transmit-power jitter (when
// configured), shadowing, then the K-slot fading average (when m is set).
RssObservation sample_rss(double r, const ChannelParams& params, Rng& gen);

// One draw of the instantaneous received power: gamma-distributed with
// shape m and the stated mean.
double sample_instantaneous_power(double mean_power_watts, double m, Rng& gen);

// Average of K independent instantaneous-power draws; its variance is
// mean^2 / (K m).
double average_over_slots(double mean_power_watts, double m, int slots, Rng& gen);

// Samples one RSS per node and keeps those above the sensitivity. An
// empty result is a valid outcome (no reachable neighbors), not an
// error. Nodes closer than the reference distance are attenuated as if
// at the reference distance; their true distance is reported unchanged.
std::vector<RssObservation> observe_neighborhood(const geometry::DeploymentField& field,
                                                 const ChannelParams& params, Rng& gen);

} // namespace selfple::channel
