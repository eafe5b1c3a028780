#pragma once

// Secure-localization machinery: reference-RSS prediction from a
// reported location, observation accumulation per suspect, the
// Neyman-Pearson range test, and announcement/confirmation bookkeeping
// across reference nodes.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "selfple/geometry.hpp"

namespace selfple::detect {

enum class Decision { Trust, Attacker };

const char* decision_name(Decision decision);

// A reference node's own state: location, locally self-estimated PLE,
// and the (trained) shadowing deviation used by the range test.
struct ReferenceIdentity {
    std::string node_id;
    geometry::Point own_location;
    double self_gamma = 0.0;   // must be positive
    double shadow_sigma = 0.0; // dB, must be positive
};

void validate(const ReferenceIdentity& identity);

struct Observation {
    std::int64_t time = 0;
    double delta_db = 0.0; // actual RSS minus reference RSS
};

// Append-only, time-ordered observation history for one suspect.
struct SuspectRecord {
    std::string suspect_id;
    geometry::Point reported_location;
    std::vector<Observation> observations;
};

// Predicted RSS from the reported location: c3 - 10 gamma log10(range),
// where c3 bundles transmit power, the propagation constant and the
// reference-distance term. Throws on a zero reported range.
double reference_rss_db(const ReferenceIdentity& identity, const geometry::Point& reported_location,
                        double c3_db);

// Convenience: c3 = tx_power_db + prop_constant_db + 10 gamma log10(r0).
double reference_c3_db(double tx_power_db, double prop_constant_db, double self_gamma,
                       double ref_distance);

// Appends (actual - reference) at the given time. Under honest reporting
// the appended values are zero-mean Gaussian with the link's shadowing
// variance.
void record_observation(SuspectRecord& record, std::int64_t time, double actual_rss_db,
                        double reference_rss_db);

struct RangeTestResult {
    Decision decision = Decision::Trust;
    double rho = 0.0;          // mean of the window
    double rho_sq = 0.0;       // rho^2, the chi-square observation
    double threshold_sq = 0.0; // critical value for rho^2
};

// Two-sided Neyman-Pearson test on the most recent `window` observations:
// reject (decide Attacker) when rho^2 >= q sigma^2 / I with q the
// chi-square(1) upper quantile at `level`; equivalently when
// |rho| >= z sigma / sqrt(I). Throws when fewer than `window`
// observations are available.
RangeTestResult np_range_test(const SuspectRecord& record, double sigma, int window, double level);

// Announcement tallies across reference nodes. A suspect is confirmed
// once announcements from strictly more than T distinct references have
// been recorded; confirmation is never revoked.
class AnnouncementBoard {
public:
    // Returns true if this (reference, suspect) pair was newly recorded.
    bool record_announcement(const std::string& reference_id, const std::string& suspect_id);
    int distinct_announcers(const std::string& suspect_id) const;
    bool confirmed(const std::string& suspect_id, int threshold) const;

private:
    std::map<std::string, std::set<std::string>> announcers_by_suspect_;
};

// Band of true ranges that keep the mean observation inside the
// acceptance region around the reported range: all r with
// |10 gamma log10(r / reported_range)| < z sigma / sqrt(I).
// Diagnostic output only.
std::pair<double, double> trust_region_band(const ReferenceIdentity& identity,
                                            const geometry::Point& reported_location, double sigma,
                                            int window, double level);

// Event-log row for CSV emission (time, detector, suspect, rho,
// threshold on |rho|, decision).
struct EventRow {
    std::int64_t time = 0;
    std::string detector_id;
    std::string suspect_id;
    double rho = 0.0;
    double threshold = 0.0;
    Decision decision = Decision::Trust;
};

std::string event_csv_header();
std::string to_csv_row(const EventRow& row);

} // namespace selfple::detect
