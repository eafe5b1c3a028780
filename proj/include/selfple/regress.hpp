#pragma once

// Builds the rank-based linear regression samples from raw RSS
// observations: descending power ranking, pairwise power differences,
// and the rank-ratio distance estimates the PLE estimators consume.
// Nothing in this module reads ground-truth distances.

#include <cstddef>
#include <utility>
#include <vector>

#include "selfple/channel.hpp"
#include "selfple/geometry.hpp"
#include "selfple/rng.hpp"

namespace selfple::regress {

// RSS values sorted descending; rank i (1-based) is the ith strongest.
// Ties keep the input order (stable sort), so results are deterministic
// for a fixed seed.
struct RankedRssSet {
    std::vector<double> rss_db;       // non-increasing
    std::vector<int> source_indices;  // original node index per rank
    int n_hat() const { return static_cast<int>(rss_db.size()); }
};

// Aligned regression samples over all unordered rank pairs (i, j) with
// i < j, enumerated lexicographically. power_diff_db holds the pairwise
// RSS differences; rank_ratio_db holds (10/d) log10(i/j).
struct PairSampleSet {
    std::vector<double> power_diff_db;
    std::vector<double> rank_ratio_db;
    std::vector<std::pair<int, int>> rank_pairs;
    int n_hat = 0;
    int dimension = 0;
    std::size_t size() const { return power_diff_db.size(); }
};

// Stable descending sort by RSS. Throws std::invalid_argument below two
// observations.
RankedRssSet rank_rss(const std::vector<channel::RssObservation>& observations);

// Pairwise power difference between ranks i and j (1-based):
// rss[j] - rss[i] in dB. Transmit power and propagation constants cancel.
double pair_power_diff_db(const RankedRssSet& ranked, int i_rank, int j_rank);

// Rank-ratio distance estimate in dB: (10/d) log10(i/j). The deployment
// region, node count and ball coefficient all cancel out of this ratio.
double rank_ratio_db(int i_rank, int j_rank, int dimension);

// All C(n_hat, 2) pairs, lexicographic in (i, j) with i < j.
PairSampleSet build_samples(const RankedRssSet& ranked, int dimension);

// Uniform subsample (without replacement) of at most `cap` pairs; used
// only when quadratic growth of the pair set must be bounded.
PairSampleSet subsample_pairs(const PairSampleSet& samples, std::size_t cap, Rng& gen);

// Keeps only observations whose node lies inside the angular window
// `phi` about `bearing` at the field origin (conventions follow
// geometry::sector_coeff: aperture phi for d = 2, cone half-angle phi
// for d = 3). Boundary points count as inside. Throws for d = 1.
std::vector<channel::RssObservation> filter_angular(const std::vector<channel::RssObservation>& observations,
                                                    const geometry::DeploymentField& field, double phi,
                                                    const geometry::Point& bearing);

} // namespace selfple::regress
