// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace metaprism {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Angle2D Angle2D::from_degrees(double theta_deg, double phi_deg) {
    return Angle2D{theta_deg * kPi / 180.0, phi_deg * kPi / 180.0};
}

Eigen::Vector2d direction_cosines(const Angle2D& a) {
    const double s = std::sin(a.theta);
    return {s * std::cos(a.phi), s * std::sin(a.phi)};
}

Angle2D angle_of(const Vec3& p) {
    const double r = p.norm();
    if (r == 0.0)
        throw std::domain_error("angle_of: zero vector has no direction");
    const double ux = p.x() / r;
    const double uy = p.y() / r;
    const double s = std::min(1.0, std::hypot(ux, uy));
    if (uy == 0.0) {
        // in-plane (phi = 0): theta carries the sign of x
        return {std::asin(std::clamp(ux, -1.0, 1.0)), 0.0};
    }
    if (uy > 0.0)
        return {std::asin(s), std::atan2(uy, ux)};
    return {-std::asin(s), std::atan2(-uy, -ux)};
}

Vec3 position_of(const Angle2D& a, double r) {
    const Eigen::Vector2d u = direction_cosines(a);
    return {r * u.x(), r * u.y(), r * std::cos(a.theta)};
}

Angle2D to_conventional(const Angle2D& a) {
    if (a.theta >= 0.0)
        return a;
    return {-a.theta, a.phi + kPi};
}

Angle2D from_conventional(const Angle2D& a) {
    if (a.phi < kPi)
        return a;
    return {-a.theta, a.phi - kPi};
}

SurfaceGrid::SurfaceGrid(int nx_, int ny_, double dx_, double dy_)
    : nx(nx_), ny(ny_), dx(dx_), dy(dy_) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("SurfaceGrid: cell counts must be >= 1");
    if (dx <= 0.0 || dy <= 0.0)
        throw std::invalid_argument("SurfaceGrid: cell pitch must be positive");
}

SurfaceGrid SurfaceGrid::with_extent(double lx, double ly, double dx, double dy) {
    if (dx <= 0.0 || dy <= 0.0)
        throw std::invalid_argument("SurfaceGrid: cell pitch must be positive");
    const int nx = std::max(1, static_cast<int>(std::lround(lx / dx)));
    const int ny = std::max(1, static_cast<int>(std::lround(ly / dy)));
    return SurfaceGrid(nx, ny, dx, dy);
}

Eigen::ArrayXd SurfaceGrid::xs() const {
    return Eigen::ArrayXd::LinSpaced(nx, 0.0, static_cast<double>(nx - 1)) * dx - lx() / 2.0;
}

Eigen::ArrayXd SurfaceGrid::ys() const {
    return Eigen::ArrayXd::LinSpaced(ny, 0.0, static_cast<double>(ny - 1)) * dy - ly() / 2.0;
}

OfdmPlan::OfdmPlan(double f0_, double bandwidth_, int k_count_)
    : f0(f0_), bandwidth(bandwidth_), k_count(k_count_) {
    if (k_count < 1)
        throw std::invalid_argument("OfdmPlan: need at least one subcarrier");
    if (bandwidth <= 0.0 || f0 <= 0.0)
        throw std::invalid_argument("OfdmPlan: f0 and bandwidth must be positive");
}

double OfdmPlan::frequency(int k) const {
    if (k < 1 || k > k_count)
        throw std::out_of_range("OfdmPlan: subcarrier index out of range");
    return f0 - bandwidth / 2.0 + k * delta_f();
}

Eigen::ArrayXd OfdmPlan::frequencies() const {
    Eigen::ArrayXd f(k_count);
    for (int k = 1; k <= k_count; ++k)
        f[k - 1] = frequency(k);
    return f;
}

double fraunhofer_distance(double diameter, double lambda) {
    if (lambda <= 0.0)
        throw std::domain_error("fraunhofer_distance: wavelength must be positive");
    if (diameter < 0.0)
        throw std::domain_error("fraunhofer_distance: diameter must be nonnegative");
    return 2.0 * diameter * diameter / lambda;
}

double fresnel_distance(double diameter, double lambda) {
    if (lambda <= 0.0)
        throw std::domain_error("fresnel_distance: wavelength must be positive");
    if (diameter < 0.0)
        throw std::domain_error("fresnel_distance: diameter must be nonnegative");
    return std::cbrt(diameter * diameter * diameter * diameter / (8.0 * lambda));
}

}  // namespace metaprism
