// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "metaprism/geometry.hpp"

namespace metaprism {

/// Radiating cell of a reflecting surface: cos^q power pattern with
/// boresight gain gc = 2*(q+1), antenna resistance r0, and the magnitude
/// of the load reflection coefficient (1 = lossless).
struct CellModel {
    double q = 0.57;
    double gc = 3.14159265358979323846;
    double r0_ohms = 50.0;
    double gamma_magnitude = 1.0;
};

struct BoresightGain {
    double gc = 0.0;
    double q = 0.0;
    bool q_clamped = false;  // cell smaller than the unit-gain area
};

/// Gain of a cell whose effective area equals its physical area dx*dy:
/// gc = 4*pi*dx*dy/lambda^2, q = gc/2 - 1 (clamped at 0 when negative).
BoresightGain boresight_gain(double dx, double dy, double lambda);

/// Cell model for the given pitch, lossless load.
CellModel cell_model_for_pitch(double dx, double dy, double lambda);

/// Normalized power pattern cos^q(theta) on the front half-space, 0 behind.
double cell_pattern(const Angle2D& a, double q);

/// Linear-in-frequency steering slopes [rad/(Hz*m)] along x and y.
struct SteerCoefficients {
    double a0 = 0.0;
    double b0 = 0.0;
};

/// Slopes that reflect the top subcarrier (at f_ref + delta_f_edge) toward
/// `target`: a0 = -(2*pi / (lambda * delta_f_edge)) * (ux_i + ux_target).
SteerCoefficients steer_to_target(const Angle2D& incident, const Angle2D& target,
                                  double lambda, double delta_f_edge);

/// Steering design swept around the specular direction: the center subcarrier
/// reflects to -theta_i and the top one to -(theta_i + theta_m). In-plane
/// (phi = 0) form; requires |theta_i + theta_m| <= pi/2.
SteerCoefficients beamsteer_coefficients(const Angle2D& incident, double theta_m,
                                         double lambda, double bandwidth);

/// Reflection direction produced by slopes (a0, b0) at a frequency offset
/// `delta_f` from the profile reference. Returns the implied direction
/// cosines, which may fall outside the unit disk (evanescent).
Eigen::Vector2d steered_cosines(const SteerCoefficients& c, const Angle2D& incident,
                                double lambda, double delta_f);

/// Angle form of steered_cosines; empty when the direction is evanescent
/// (no propagating reflection at that subcarrier).
std::optional<Angle2D> steered_direction(const SteerCoefficients& c, const Angle2D& incident,
                                         const OfdmPlan& plan, int k);

/// Linear steering phase (a0*x + b0*y) * (f - f_ref).
double beamsteer_phase(double x, double y, double f, const SteerCoefficients& c, double f_ref);

/// Quadratic focusing coefficient a_f [rad/(m^2*Hz)] such that the focal
/// distance at the top subcarrier equals d_m. With `literal_constant` the
/// alternative constant 2*pi*f1/(c*d_m*W) is used instead (which puts the
/// top-subcarrier focus near d_m/2; kept as a compatibility switch).
double focus_coefficient(double d_m, const OfdmPlan& plan, bool literal_constant = false);

/// Focal distance of subcarrier k for coefficient a_f; +infinity at k = 1
/// (the profile degenerates to beamsteering there).
double focal_distance(double a_f, const OfdmPlan& plan, int k);

/// Fresnel focusing phase: quadratic (2*pi/lambda)*(x^2+y^2)/(2*d_f) plus the
/// linear steering term toward `target`. d_f = +infinity drops the quadratic.
double focus_phase(double x, double y, const Angle2D& incident, const Angle2D& target,
                   double d_f, double lambda);

/// Per-cell phase that conjugates both propagation phases for endpoints at
/// `p_bs` and `p`: (2*pi*f/c) * (|p_bs - cell| + |p - cell|).
double ideal_phase(const Vec3& cell, const Vec3& p_bs, const Vec3& p, double f);

// ---------------------------------------------------------------------------
// Phase profiles: every supported profile is affine in frequency per cell,
// Psi_nm(f) = base_nm + slope_nm * f, which the channel engine exploits.

struct SpecularProfile {};  // uniform Psi = pi

struct BeamsteerProfile {
    SteerCoefficients steer;
    double f_ref = 0.0;  // center frequency f0
};

struct FocusProfile {
    double a_f = 0.0;
    SteerCoefficients steer;
    double f_ref = 0.0;  // lowest subcarrier f1
};

/// Conjugates the channel phase toward a fixed target position, for the
/// stated per-endpoint propagation modes (far-field sides contribute their
/// planar component, exact sides the true distance term).
struct IdealProfile {
    Vec3 p_bs = Vec3::Zero();
    Vec3 p_target = Vec3::Zero();
    PropagationMode bs_mode = PropagationMode::far_field;
    PropagationMode rx_mode = PropagationMode::exact;
    double lambda = 0.0;  // used by far-field sides
};

using PhaseProfile = std::variant<SpecularProfile, BeamsteerProfile, FocusProfile, IdealProfile>;

/// Profile phase at one cell and frequency.
double profile_phase(const PhaseProfile& profile, double x, double y, double f);

/// Per-cell affine decomposition Psi(f) = base + slope*f over a grid.
struct AffinePhase {
    Eigen::ArrayXXd base;   // nx-by-ny, radians
    Eigen::ArrayXXd slope;  // nx-by-ny, radians per Hz
};
AffinePhase profile_affine(const PhaseProfile& profile, const SurfaceGrid& grid);

/// Frequency-slope coefficient alpha_nm = dPsi/df per cell [rad/Hz].
/// Throws std::invalid_argument for the ideal profile, whose per-cell
/// constant term is cell-dependent and not realizable in this form.
Eigen::ArrayXXd profile_alpha(const PhaseProfile& profile, const SurfaceGrid& grid);

// ---------------------------------------------------------------------------
// Series-LC realization of a linear-in-frequency cell phase.

struct LcLoad {
    double inductance_h = 0.0;
    double capacitance_f = 0.0;
};

/// Loads realizing slope alpha [rad/Hz] at resonance f_r: L = -alpha*r0/(8*pi),
/// C = 1/((2*pi*f_r)^2 * L). Throws std::invalid_argument for alpha >= 0
/// (the inductance would not be positive).
LcLoad lc_load_synthesis(double alpha, double r0, double f_r);

/// Exact reflection phase -2*atan(X(f)/r0) of a series-LC load.
double lc_phase_exact(const LcLoad& load, double r0, double f);

/// LC table for a whole profile. `slope_offset` is a common (cell-independent)
/// frequency slope added to every cell before synthesis; steering is
/// unaffected by it. With `auto_offset`, an offset is chosen so every cell's
/// effective slope is strictly negative (realizable).
struct LcTable {
    Eigen::ArrayXXd alpha;  // effective per-cell slope, rad/Hz
    std::vector<LcLoad> loads;  // row-major (n, m)
    double slope_offset = 0.0;
    double f_r = 0.0;
};
LcTable lc_table(const PhaseProfile& profile, const SurfaceGrid& grid, double r0, double f_r,
                 bool auto_offset = true);

/// Cell reflection coefficient sqrt(F(inc)*F(obs)) * gc * |Gamma| * e^{j*psi}.
std::complex<double> reflection_coefficient(const CellModel& cell, double psi,
                                            const Angle2D& incident, const Angle2D& observed);

}  // namespace metaprism
