#pragma once

// Random node deployment in d-dimensional balls and the order-statistic
// distance distributions that the channel-level analysis rests on.
// Dimensions 1, 2 and 3 are supported (line, plane, volume deployments).

#include <cstdint>
#include <vector>

#include "selfple/rng.hpp"

namespace selfple::geometry {

struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Point& a, const Point& b);

struct SpaceConfig {
    int dimension = 2;       // 1, 2 or 3
    double field_radius = 0; // meters
    double density = 0;      // nodes per m^d
};

// Throws std::invalid_argument if the configuration is out of contract.
void validate(const SpaceConfig& space);

// A realized deployment: the estimating node sits at `origin` (the field
// center); `positions` carry no ordering semantics.
struct DeploymentField {
    Point origin;
    std::vector<Point> positions;
    SpaceConfig space;
};

// Volume coefficient of the unit d-ball: c_1 = 2, c_2 = pi, c_3 = 4pi/3.
double unit_ball_coeff(int dimension);

// Volume coefficient of an angular sector of window phi. Conventions:
//   d = 1: one side of the origin, coefficient 1 (2 at the full window),
//   d = 2: aperture phi in (0, 2pi], coefficient phi / 2,
//   d = 3: cone half-angle phi in (0, pi], coefficient (2pi/3)(1 - cos phi).
// At the full window the sector coincides with the whole ball.
double sector_coeff(int dimension, double phi);

double full_angle(int dimension); // 2pi for d = 1, 2; pi for d = 3

// Expected node count implied by the density over the d-ball.
std::size_t node_count(const SpaceConfig& space);

// Draws round(density * c_d * R^d) points independently and uniformly
// over the d-ball via inverse-cdf radial sampling (r = R u^(1/d)) and a
// uniform direction. Deterministic for a fixed generator state.
// Throws std::invalid_argument when the implied node count is zero.
DeploymentField deploy_uniform(const SpaceConfig& space, Rng& gen);

// Density of the distance to the kth nearest of n uniform points in the
// d-ball of radius R, evaluated at r:
//   d / (r B(n-k+1, k)) * (r^d/R^d)^k * (1 - r^d/R^d)^(n-k).
double kth_nearest_distance_pdf(double r, int k, int n, const SpaceConfig& space);

// Matching cdf (regularized incomplete beta of (r/R)^d).
double kth_nearest_distance_cdf(double r, int k, int n, const SpaceConfig& space);

} // namespace selfple::geometry
