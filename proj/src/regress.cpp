#include "selfple/regress.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace selfple::regress {

RankedRssSet rank_rss(const std::vector<channel::RssObservation>& observations) {
    if (observations.size() < 2)
        throw std::invalid_argument("rank_rss: need at least two observations");
    std::vector<int> order(observations.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return observations[a].rss_db > observations[b].rss_db;
    });
    RankedRssSet ranked;
    ranked.rss_db.reserve(order.size());
    ranked.source_indices.reserve(order.size());
    for (int idx : order) {
        ranked.rss_db.push_back(observations[idx].rss_db);
        ranked.source_indices.push_back(observations[idx].node_index);
    }
    return ranked;
}

double pair_power_diff_db(const RankedRssSet& ranked, int i_rank, int j_rank) {
    const int n = ranked.n_hat();
    if (i_rank < 1 || i_rank > n || j_rank < 1 || j_rank > n || i_rank == j_rank)
        throw std::invalid_argument("pair_power_diff_db: ranks must be distinct and in 1..n_hat");
    return ranked.rss_db[j_rank - 1] - ranked.rss_db[i_rank - 1];
}

double rank_ratio_db(int i_rank, int j_rank, int dimension) {
    if (i_rank < 1 || j_rank < 1)
        throw std::invalid_argument("rank_ratio_db: ranks must be >= 1");
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("rank_ratio_db: dimension must be 1, 2 or 3");
    return 10.0 / dimension * std::log10(static_cast<double>(i_rank) / j_rank);
}

PairSampleSet build_samples(const RankedRssSet& ranked, int dimension) {
    const int n = ranked.n_hat();
    if (n < 2)
        throw std::invalid_argument("build_samples: need at least two ranked observations");
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("build_samples: dimension must be 1, 2 or 3");
    PairSampleSet samples;
    samples.n_hat = n;
    samples.dimension = dimension;
    const std::size_t count = static_cast<std::size_t>(n) * (n - 1) / 2;
    samples.power_diff_db.reserve(count);
    samples.rank_ratio_db.reserve(count);
    samples.rank_pairs.reserve(count);
    // Per-rank log table; the pair loop is quadratic in n_hat.
    std::vector<double> log10_rank(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) log10_rank[i] = std::log10(static_cast<double>(i));
    const double scale = 10.0 / dimension;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            samples.power_diff_db.push_back(ranked.rss_db[j - 1] - ranked.rss_db[i - 1]);
            samples.rank_ratio_db.push_back(scale * (log10_rank[i] - log10_rank[j]));
            samples.rank_pairs.emplace_back(i, j);
        }
    }
    return samples;
}

PairSampleSet subsample_pairs(const PairSampleSet& samples, std::size_t cap, Rng& gen) {
    if (cap == 0)
        throw std::invalid_argument("subsample_pairs: cap must be positive");
    if (samples.size() <= cap) return samples;
    // Partial Fisher-Yates over the index set.
    std::vector<std::size_t> idx(samples.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen.uniform() * (idx.size() - i));
        std::swap(idx[i], idx[std::min(j, idx.size() - 1)]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    PairSampleSet out;
    out.n_hat = samples.n_hat;
    out.dimension = samples.dimension;
    out.power_diff_db.reserve(cap);
    out.rank_ratio_db.reserve(cap);
    out.rank_pairs.reserve(cap);
    for (std::size_t i : idx) {
        out.power_diff_db.push_back(samples.power_diff_db[i]);
        out.rank_ratio_db.push_back(samples.rank_ratio_db[i]);
        out.rank_pairs.push_back(samples.rank_pairs[i]);
    }
    return out;
}

std::vector<channel::RssObservation> filter_angular(const std::vector<channel::RssObservation>& observations,
                                                    const geometry::DeploymentField& field, double phi,
                                                    const geometry::Point& bearing) {
    const int d = field.space.dimension;
    if (d == 1)
        throw std::invalid_argument("filter_angular: not defined for dimension 1");
    if (!(phi > 0.0) || phi > geometry::full_angle(d))
        throw std::invalid_argument("filter_angular: phi out of range for dimension");
    const double bearing_norm = std::sqrt(bearing.x * bearing.x + bearing.y * bearing.y + bearing.z * bearing.z);
    if (!(bearing_norm > 0.0))
        throw std::invalid_argument("filter_angular: bearing must be a nonzero direction");

    // Cone half-angle implied by the sector convention.
    const double half_angle = d == 2 ? phi / 2.0 : phi;
    const double cos_half = std::cos(half_angle);

    std::vector<channel::RssObservation> kept;
    for (const auto& obs : observations) {
        const auto& p = field.positions.at(static_cast<std::size_t>(obs.node_index));
        const double vx = p.x - field.origin.x;
        const double vy = p.y - field.origin.y;
        const double vz = p.z - field.origin.z;
        const double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
        if (norm == 0.0) {
            kept.push_back(obs); // coincident with the origin: inside by convention
            continue;
        }
        const double cos_angle = (vx * bearing.x + vy * bearing.y + vz * bearing.z) / (norm * bearing_norm);
        if (cos_angle >= cos_half - 1e-15)
            kept.push_back(obs);
    }
    return kept;
}

} // namespace selfple::regress
