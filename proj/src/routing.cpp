#include "selfple/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "selfple/special.hpp"

namespace selfple::routing {

void validate(const RoutingScenario& scenario) {
    geometry::validate(scenario.space);
    if (!(scenario.gamma > 0.0))
        throw std::invalid_argument("RoutingScenario: gamma must be positive");
    if (!(scenario.shadow_sigma >= 0.0))
        throw std::invalid_argument("RoutingScenario: shadow_sigma must be >= 0");
    const int n = scenario.n();
    if (scenario.k_max < 1 || scenario.k_max > n)
        throw std::invalid_argument("RoutingScenario: need 1 <= k_max <= n");
}

double expected_path_loss(int k, const RoutingScenario& scenario) {
    validate(scenario);
    const int n = scenario.n();
    if (k < 1 || k > n)
        throw std::invalid_argument("expected_path_loss: need 1 <= k <= n");
    const double alpha = scenario.gamma / scenario.space.dimension;
    const double log_value = scenario.gamma * std::log(scenario.space.field_radius) +
                             special::log_gamma(n + 1.0) - special::log_gamma(n + alpha + 1.0) +
                             special::log_gamma(k + alpha) - special::log_gamma(static_cast<double>(k));
    return std::exp(log_value);
}

double k_efficiency(int k, double alpha) {
    if (k < 1)
        throw std::invalid_argument("k_efficiency: k must be >= 1");
    if (!(alpha > 0.0))
        throw std::invalid_argument("k_efficiency: alpha must be positive");
    const double log_ratio = special::log_gamma(k + alpha) - special::log_gamma(static_cast<double>(k));
    return std::exp(log_ratio) * (special::digamma(k + alpha) - special::digamma(static_cast<double>(k)));
}

std::vector<KthHopStat> simulate_kth_routing(const RoutingScenario& scenario, int trials, Rng& gen) {
    validate(scenario);
    if (trials < 1)
        throw std::invalid_argument("simulate_kth_routing: trials must be >= 1");

    const int k_max = scenario.k_max;
    std::vector<double> sum(k_max, 0.0);
    std::vector<double> sum_sq(k_max, 0.0);
    std::vector<double> dist;
    for (int t = 0; t < trials; ++t) {
        const auto field = geometry::deploy_uniform(scenario.space, gen);
        dist.clear();
        dist.reserve(field.positions.size());
        for (const auto& p : field.positions)
            dist.push_back(geometry::distance(field.origin, p));
        std::partial_sort(dist.begin(), dist.begin() + k_max, dist.end());
        for (int k = 1; k <= k_max; ++k) {
            double loss = std::pow(dist[k - 1], scenario.gamma);
            if (scenario.shadow_sigma > 0.0)
                loss *= std::pow(10.0, gen.normal(0.0, scenario.shadow_sigma) / 10.0);
            const double per_hop = loss / k;
            sum[k - 1] += per_hop;
            sum_sq[k - 1] += per_hop * per_hop;
        }
    }

    std::vector<KthHopStat> stats;
    stats.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        KthHopStat s;
        s.k = k;
        s.mean_per_hop_loss = sum[k - 1] / trials;
        if (trials > 1) {
            const double var =
                (sum_sq[k - 1] - sum[k - 1] * sum[k - 1] / trials) / (trials - 1);
            s.std_error = std::sqrt(std::max(0.0, var) / trials);
        }
        stats.push_back(s);
    }
    return stats;
}

} // namespace selfple::routing
