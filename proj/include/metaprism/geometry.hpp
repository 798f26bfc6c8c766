// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace metaprism {

using Vec3 = Eigen::Vector3d;

/// Speed of light in vacuum [m/s] (SI definition).
inline constexpr double speed_of_light = 299792458.0;

/// How per-cell propagation terms are evaluated for one link endpoint.
/// `exact` uses the true cell-to-endpoint distance in amplitude and phase;
/// `far_field` uses the surface-center distance and a planar wavefront.
enum class PropagationMode { exact, far_field };

/// Direction of a point seen from the surface center, in the relaxed
/// spherical convention: signed inclination theta in [-pi/2, pi/2],
/// azimuth phi in [0, pi). The surface normal is +z (theta = 0).
struct Angle2D {
    double theta = 0.0;  // radians, signed
    double phi = 0.0;    // radians

    static Angle2D from_degrees(double theta_deg, double phi_deg = 0.0);
};

/// (u_x, u_y) = (sin theta cos phi, sin theta sin phi).
Eigen::Vector2d direction_cosines(const Angle2D& a);

/// Direction of `p` from the origin. Throws std::domain_error on the zero
/// vector. Inverse of position_of on the front half-space (z >= 0).
Angle2D angle_of(const Vec3& p);

/// Point at distance `r` along direction `a`.
Vec3 position_of(const Angle2D& a, double r);

/// Conversion to the conventional system theta in [0, pi), phi in [0, 2*pi);
/// bijective on the front half-space.
Angle2D to_conventional(const Angle2D& a);
Angle2D from_conventional(const Angle2D& a);

/// Planar grid of cells in the x-y plane, centered at the origin.
/// Cell (n, m) sits at (n*dx - lx/2, m*dy - ly/2, 0), n = 0..nx-1.
struct SurfaceGrid {
    int nx = 1;
    int ny = 1;
    double dx = 0.0;  // meters
    double dy = 0.0;  // meters

    SurfaceGrid() = default;
    SurfaceGrid(int nx_, int ny_, double dx_, double dy_);

    /// Grid covering approximately lx-by-ly at the given pitch (cell counts
    /// rounded to the nearest integer, at least 1).
    static SurfaceGrid with_extent(double lx, double ly, double dx, double dy);

    double lx() const { return nx * dx; }
    double ly() const { return ny * dy; }
    double area() const { return lx() * ly(); }
    double diameter() const { return lx() > ly() ? lx() : ly(); }
    int cell_count() const { return nx * ny; }

    double cell_x(int n) const { return n * dx - lx() / 2.0; }
    double cell_y(int m) const { return m * dy - ly() / 2.0; }

    /// Cell x coordinates (size nx) and y coordinates (size ny).
    Eigen::ArrayXd xs() const;
    Eigen::ArrayXd ys() const;
};

/// OFDM band plan: K subcarriers spanning bandwidth W around f0, with
/// f_k = f0 - W/2 + k*W/K for k = 1..K.
struct OfdmPlan {
    double f0 = 0.0;         // Hz
    double bandwidth = 0.0;  // Hz
    int k_count = 1;

    OfdmPlan() = default;
    OfdmPlan(double f0_, double bandwidth_, int k_count_);

    double delta_f() const { return bandwidth / k_count; }
    double wavelength() const { return speed_of_light / f0; }

    /// Frequency of subcarrier k (1-based). Throws std::out_of_range.
    double frequency(int k) const;
    /// Lowest subcarrier frequency f_1.
    double f_low() const { return frequency(1); }
    /// Highest subcarrier frequency f_K = f0 + W/2.
    double f_high() const { return frequency(k_count); }

    /// All K subcarrier frequencies.
    Eigen::ArrayXd frequencies() const;

    /// True when the narrowband assumption W/f0 << 1 is questionable.
    bool wideband() const { return bandwidth / f0 > 0.05; }
};

/// Far-field boundary 2*D^2/lambda.
double fraunhofer_distance(double diameter, double lambda);

/// Radiating near-field lower bound (D^4 / (8*lambda))^(1/3).
double fresnel_distance(double diameter, double lambda);

}  // namespace metaprism
