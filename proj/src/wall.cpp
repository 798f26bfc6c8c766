// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/wall.hpp"

#include <cmath>

namespace metaprism {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}

std::optional<WallMaterial> wall_material_preset(const std::string& name) {
    if (name == "aerated_concrete")
        return WallMaterial{2.26, 0.0491, 0.1, 0.9};
    return std::nullopt;
}

std::complex<double> fresnel_te(double theta_i, const WallMaterial& material) {
    const double ti = std::abs(theta_i);
    const double c = std::cos(ti);
    const double s = std::sin(ti);
    const std::complex<double> n2(material.eps_r, -material.eps_r * material.tan_delta);
    const std::complex<double> root = std::sqrt(n2 - s * s);
    return (c - root) / (c + root);
}

double wall_diffuse_phase(double x, double y, const Angle2D& incident, const Angle2D& observed,
                          double lambda) {
    const Eigen::Vector2d ui = direction_cosines(incident);
    const Eigen::Vector2d uo = direction_cosines(observed);
    return -kTwoPi / lambda * (x * (ui.x() + uo.x()) + y * (ui.y() + uo.y()));
}

std::complex<double> wall_cell_reflection(int n, int m, const Angle2D& incident,
                                          const Angle2D& observed, const WallMaterial& material,
                                          const SurfaceGrid& grid, double lambda) {
    const double gs = grid.dx * grid.dy * 4.0 * kPi / (lambda * lambda);
    const std::complex<double> specular =
        fresnel_te(incident.theta, material) * material.r() * std::sqrt(gs);
    const double ci = std::max(0.0, std::cos(incident.theta));
    const double co = std::max(0.0, std::cos(observed.theta));
    const double diffuse_amp = material.s() * std::sqrt(gs * ci * co);
    const double psi =
        wall_diffuse_phase(grid.cell_x(n), grid.cell_y(m), incident, observed, lambda);
    return specular + std::polar(diffuse_amp, psi);
}

}  // namespace metaprism
