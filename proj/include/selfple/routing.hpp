#pragma once

// kth-nearest-neighbor routing energy analysis: closed-form expected
// path loss to the kth neighbor, the marginal k-efficiency function, and
// a shadowing-aware Monte Carlo counterpart.

#include <vector>

#include "selfple/geometry.hpp"
#include "selfple/rng.hpp"

namespace selfple::routing {

// Local neighborhood for the analysis: n nodes uniform in the R-ball
// centered at the considered node (n implied by the space density),
// path-loss exponent gamma, optional lognormal shadowing. Path loss is
// expressed against a 1 m reference.
struct RoutingScenario {
    geometry::SpaceConfig space;
    double gamma = 2.0;
    double shadow_sigma = 0.0; // dB, 0 = no shadowing
    int k_max = 1;
    int n() const { return static_cast<int>(geometry::node_count(space)); }
};

void validate(const RoutingScenario& scenario);

// Expected path loss r_k^gamma of a single hop to the kth nearest of n
// uniform nodes in the R-ball:
//   R^gamma Gamma(n+1)/Gamma(n+gamma/d+1) * Gamma(k+gamma/d)/Gamma(k),
// evaluated via log-gamma.
double expected_path_loss(int k, const RoutingScenario& scenario);

// Marginal cost of increasing k, up to a k-independent prefactor:
//   f(k) = Gamma(k+alpha) (psi(k+alpha) - psi(k)) / Gamma(k),
// with alpha = gamma/d and psi the digamma function. f is identically 1
// at alpha = 1, decreasing in k for alpha < 1 and increasing for
// alpha > 1.
double k_efficiency(int k, double alpha);

struct KthHopStat {
    int k = 0;
    double mean_per_hop_loss = 0.0; // mean of r_k^gamma (shadowed) / k
    double std_error = 0.0;
};

// Monte Carlo: per trial, deploy the scenario field, take the k nearest
// distances, and accumulate r_k^gamma / k; with shadowing the linear
// loss is multiplied by 10^(chi/10), chi ~ Normal(0, sigma^2), drawn
// independently per (trial, k).
std::vector<KthHopStat> simulate_kth_routing(const RoutingScenario& scenario, int trials, Rng& gen);

} // namespace selfple::routing
