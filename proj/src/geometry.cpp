#include "selfple/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "selfple/special.hpp"

namespace selfple::geometry {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void validate(const SpaceConfig& space) {
    if (space.dimension < 1 || space.dimension > 3)
        throw std::invalid_argument("SpaceConfig: dimension must be 1, 2 or 3");
    if (!(space.field_radius > 0.0))
        throw std::invalid_argument("SpaceConfig: field_radius must be positive");
    if (!(space.density > 0.0))
        throw std::invalid_argument("SpaceConfig: density must be positive");
}

double unit_ball_coeff(int dimension) {
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("unit_ball_coeff: dimension must be 1, 2 or 3");
    return std::pow(kPi, dimension / 2.0) / std::exp(special::log_gamma(1.0 + dimension / 2.0));
}

double full_angle(int dimension) {
    if (dimension < 1 || dimension > 3)
        throw std::invalid_argument("full_angle: dimension must be 1, 2 or 3");
    return dimension == 3 ? kPi : 2.0 * kPi;
}

double sector_coeff(int dimension, double phi) {
    const double full = full_angle(dimension);
    if (!(phi > 0.0) || phi > full)
        throw std::invalid_argument("sector_coeff: phi out of range for dimension");
    switch (dimension) {
    case 1:
        return phi == full ? 2.0 : 1.0;
    case 2:
        return phi / 2.0;
    default:
        return (2.0 * kPi / 3.0) * (1.0 - std::cos(phi));
    }
}

std::size_t node_count(const SpaceConfig& space) {
    validate(space);
    const double expected =
        space.density * unit_ball_coeff(space.dimension) * std::pow(space.field_radius, space.dimension);
    return static_cast<std::size_t>(std::llround(expected));
}

DeploymentField deploy_uniform(const SpaceConfig& space, Rng& gen) {
    const std::size_t n = node_count(space);
    if (n == 0)
        throw std::invalid_argument("deploy_uniform: density and radius imply an empty field");

    DeploymentField field;
    field.space = space;
    field.positions.reserve(n);
    const double radius = space.field_radius;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radius * std::pow(gen.uniform(), 1.0 / space.dimension);
        Point p;
        switch (space.dimension) {
        case 1:
            p.x = gen.uniform() < 0.5 ? -r : r;
            break;
        case 2: {
            const double theta = 2.0 * kPi * gen.uniform();
            p.x = r * std::cos(theta);
            p.y = r * std::sin(theta);
            break;
        }
        default: {
            const double cos_theta = 2.0 * gen.uniform() - 1.0;
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
            const double phi = 2.0 * kPi * gen.uniform();
            p.x = r * sin_theta * std::cos(phi);
            p.y = r * sin_theta * std::sin(phi);
            p.z = r * cos_theta;
            break;
        }
        }
        field.positions.push_back(p);
    }
    return field;
}

namespace {

void check_order_stat_args(double r, int k, int n, const SpaceConfig& space) {
    validate(space);
    if (k < 1 || n < 1 || k > n)
        throw std::invalid_argument("kth nearest distance: need 1 <= k <= n");
    if (!(r > 0.0) || r > space.field_radius)
        throw std::invalid_argument("kth nearest distance: r must lie in (0, R]");
}

} // namespace

double kth_nearest_distance_pdf(double r, int k, int n, const SpaceConfig& space) {
    check_order_stat_args(r, k, n, space);
    const int d = space.dimension;
    const double t = std::pow(r / space.field_radius, d);
    const double log_b = special::log_gamma(n - k + 1.0) + special::log_gamma(static_cast<double>(k)) -
                         special::log_gamma(n + 1.0);
    // d / (r B(n-k+1, k)) t^k (1-t)^(n-k), assembled in log space.
    double log_pdf = std::log(static_cast<double>(d)) - std::log(r) - log_b + k * std::log(t);
    if (n > k) log_pdf += (n - k) * std::log1p(-t); // t == 1 drives the pdf to 0
    return std::exp(log_pdf);
}

double kth_nearest_distance_cdf(double r, int k, int n, const SpaceConfig& space) {
    check_order_stat_args(r, k, n, space);
    const double t = std::pow(r / space.field_radius, space.dimension);
    return special::incomplete_beta(static_cast<double>(k), static_cast<double>(n - k + 1), t);
}

} // namespace selfple::geometry
