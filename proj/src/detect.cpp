#include "selfple/detect.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "selfple/special.hpp"

namespace selfple::detect {

const char* decision_name(Decision decision) {
    return decision == Decision::Trust ? "trust" : "attacker";
}

void validate(const ReferenceIdentity& identity) {
    if (!(identity.self_gamma > 0.0))
        throw std::invalid_argument("ReferenceIdentity: self_gamma must be positive");
    if (!(identity.shadow_sigma > 0.0))
        throw std::invalid_argument("ReferenceIdentity: shadow_sigma must be positive");
}

double reference_c3_db(double tx_power_db, double prop_constant_db, double self_gamma,
                       double ref_distance) {
    if (!(ref_distance > 0.0))
        throw std::invalid_argument("reference_c3_db: ref_distance must be positive");
    return tx_power_db + prop_constant_db + 10.0 * self_gamma * std::log10(ref_distance);
}

double reference_rss_db(const ReferenceIdentity& identity, const geometry::Point& reported_location,
                        double c3_db) {
    validate(identity);
    const double range = geometry::distance(identity.own_location, reported_location);
    if (!(range > 0.0))
        throw std::invalid_argument("reference_rss_db: reported location coincides with the reference");
    return c3_db - 10.0 * identity.self_gamma * std::log10(range);
}

void record_observation(SuspectRecord& record, std::int64_t time, double actual_rss_db,
                        double reference_rss_db) {
    if (!record.observations.empty() && time < record.observations.back().time)
        throw std::invalid_argument("record_observation: time must be non-decreasing");
    record.observations.push_back(Observation{time, actual_rss_db - reference_rss_db});
}

RangeTestResult np_range_test(const SuspectRecord& record, double sigma, int window, double level) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("np_range_test: sigma must be positive");
    if (window < 1)
        throw std::invalid_argument("np_range_test: window must be >= 1");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("np_range_test: level must lie in (0, 1)");
    if (record.observations.size() < static_cast<std::size_t>(window))
        throw std::invalid_argument("np_range_test: fewer observations than the window");

    double sum = 0.0;
    const std::size_t begin = record.observations.size() - static_cast<std::size_t>(window);
    for (std::size_t i = begin; i < record.observations.size(); ++i)
        sum += record.observations[i].delta_db;
    const double rho = sum / window;

    RangeTestResult result;
    result.rho = rho;
    result.rho_sq = rho * rho;
    result.threshold_sq = special::chi_square1_upper_quantile(level) * sigma * sigma / window;
    result.decision = result.rho_sq >= result.threshold_sq ? Decision::Attacker : Decision::Trust;
    return result;
}

bool AnnouncementBoard::record_announcement(const std::string& reference_id,
                                            const std::string& suspect_id) {
    return announcers_by_suspect_[suspect_id].insert(reference_id).second;
}

int AnnouncementBoard::distinct_announcers(const std::string& suspect_id) const {
    const auto it = announcers_by_suspect_.find(suspect_id);
    return it == announcers_by_suspect_.end() ? 0 : static_cast<int>(it->second.size());
}

bool AnnouncementBoard::confirmed(const std::string& suspect_id, int threshold) const {
    if (threshold < 1)
        throw std::invalid_argument("AnnouncementBoard::confirmed: threshold must be >= 1");
    return distinct_announcers(suspect_id) > threshold;
}

std::pair<double, double> trust_region_band(const ReferenceIdentity& identity,
                                            const geometry::Point& reported_location, double sigma,
                                            int window, double level) {
    validate(identity);
    if (!(sigma > 0.0) || window < 1 || !(level > 0.0 && level < 1.0))
        throw std::invalid_argument("trust_region_band: invalid test parameters");
    const double reported_range = geometry::distance(identity.own_location, reported_location);
    if (!(reported_range > 0.0))
        throw std::invalid_argument("trust_region_band: reported location coincides with the reference");
    const double z = special::normal_quantile(1.0 - level / 2.0);
    const double half_width_db = z * sigma / std::sqrt(static_cast<double>(window));
    const double factor = std::pow(10.0, half_width_db / (10.0 * identity.self_gamma));
    return {reported_range / factor, reported_range * factor};
}

std::string event_csv_header() { return "time,detector_id,suspect_id,rho,threshold,decision"; }

std::string to_csv_row(const EventRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%lld,%s,%s,%.10g,%.10g,%s", static_cast<long long>(row.time),
                  row.detector_id.c_str(), row.suspect_id.c_str(), row.rho, row.threshold,
                  decision_name(row.decision));
    return buf;
}

} // namespace selfple::detect
