// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <complex>
#include <optional>
#include <string>

#include "metaprism/geometry.hpp"

namespace metaprism {

/// Rough-wall scattering parameters: Fresnel permittivity plus the
/// specular power reduction R^2 and diffuse power scattering S^2.
struct WallMaterial {
    double eps_r = 1.0;
    double tan_delta = 0.0;
    double s2 = 0.0;  // power scattering coefficient S^2
    double r2 = 1.0;  // power reduction factor R^2

    double s() const { return std::sqrt(s2); }
    double r() const { return std::sqrt(r2); }
};

/// Material preset by name; currently "aerated_concrete"
/// (eps_r = 2.26, tan_delta = 0.0491, S^2 = 0.1, R^2 = 0.9).
std::optional<WallMaterial> wall_material_preset(const std::string& name);

/// TE Fresnel reflection coefficient for complex n^2 = eps_r*(1 - j*tan_delta).
std::complex<double> fresnel_te(double theta_i, const WallMaterial& material);

/// Coherent diffuse phase toward observation angle `observed`:
/// -(2*pi/lambda) * (x*(ux_i + ux) + y*(uy_i + uy)), common offset zero.
double wall_diffuse_phase(double x, double y, const Angle2D& incident, const Angle2D& observed,
                          double lambda);

/// Per-cell wall reflection coefficient: specular term Gamma(theta_i)*R*sqrt(Gs)
/// (uniform phase across cells) plus the Lambertian diffuse term
/// S*sqrt(Gs*cos(theta_i)*cos(theta))*e^{j*Psi}, with Gs = dx*dy*4*pi/lambda^2.
std::complex<double> wall_cell_reflection(int n, int m, const Angle2D& incident,
                                          const Angle2D& observed, const WallMaterial& material,
                                          const SurfaceGrid& grid, double lambda);

}  // namespace metaprism
