// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <complex>
#include <vector>

#include "metaprism/profiles.hpp"
#include "metaprism/wall.hpp"

namespace metaprism {

using Complex = std::complex<double>;

/// Per-cell channel gain from the transmitter at `p_bs` to `cell`.
/// Exact mode: sqrt(Gt)*lambda/(4*pi*r) * e^{-j*2*pi*f*r/c} with the true
/// distance r. Far-field mode: center distance amplitude and planar phase.
Complex incident_gain(const Vec3& p_bs, const Vec3& cell, double f, double gt,
                      PropagationMode mode, double lambda);

/// Mirror of incident_gain for the cell-to-receiver leg with gain Gr.
Complex reflected_gain(const Vec3& cell, const Vec3& p, double f, double gr,
                       PropagationMode mode, double lambda);

/// Link endpoints and per-endpoint propagation treatment. The default
/// matches a base station in LOS far field and a receiver evaluated exactly.
struct LinkEnds {
    Vec3 bs = Vec3::Zero();
    Vec3 rx = Vec3::Zero();
    double gt = 1.0;  // linear
    double gr = 1.0;  // linear
    PropagationMode bs_mode = PropagationMode::far_field;
    PropagationMode rx_mode = PropagationMode::exact;

    LinkEnds swapped() const { return {rx, bs, gr, gt, rx_mode, bs_mode}; }
};

struct PrismSurface {
    SurfaceGrid grid;
    CellModel cell;
    PhaseProfile profile;
};

/// Rough wall; cells inside the optional cutout half-widths are excluded
/// (used when a metaprism patch replaces part of the wall).
struct WallSurface {
    SurfaceGrid grid;
    WallMaterial material;
    double cutout_half_x = 0.0;
    double cutout_half_y = 0.0;
};

/// Per-cell phasor decomposition of h_nm * g_nm: amplitude and an affine
/// phase base + slope*f. All profile and propagation phases in this model
/// are affine in frequency, which keeps multi-subcarrier sweeps cheap.
struct CellPhasors {
    Eigen::ArrayXXd amplitude;
    Eigen::ArrayXXd phase_base;   // radians
    Eigen::ArrayXXd phase_slope;  // radians per Hz
    Angle2D incident;             // surface-center angle of the transmitter
    Angle2D observed;             // surface-center angle of the receiver
};

CellPhasors link_cell_phasors(const SurfaceGrid& grid, const LinkEnds& ends, double lambda);

/// Sum of amp * e^{j(base + slope*f)} over all cells (fixed traversal order).
Complex phasor_sum(const Eigen::ArrayXXd& amplitude, const Eigen::ArrayXXd& base,
                   const Eigen::ArrayXXd& slope, double f);

/// phasor_sum at every subcarrier of the plan, evaluated with an incremental
/// per-subcarrier rotation (one complex multiply per cell per subcarrier).
Eigen::ArrayXcd phasor_spectrum(const Eigen::ArrayXXd& amplitude, const Eigen::ArrayXXd& base,
                                const Eigen::ArrayXXd& slope, const OfdmPlan& plan);

/// End-to-end channel coefficient c^(k) = sum_nm h_nm * r_nm * g_nm.
Complex composite_channel(const PrismSurface& surface, const LinkEnds& ends, const OfdmPlan& plan,
                          int k);
Complex composite_channel(const WallSurface& surface, const LinkEnds& ends, const OfdmPlan& plan,
                          int k);

/// c^(k) for every subcarrier k = 1..K.
Eigen::ArrayXcd channel_spectrum(const PrismSurface& surface, const LinkEnds& ends,
                                 const OfdmPlan& plan);
Eigen::ArrayXcd channel_spectrum(const WallSurface& surface, const LinkEnds& ends,
                                 const OfdmPlan& plan);

/// Equivalent array factor of the surface steered to direction cosines
/// `u_target`, observed at `u_obs` (values may lie outside the unit disk).
Complex array_factor(const SurfaceGrid& grid, const Eigen::Vector2d& u_target,
                     const Eigen::Vector2d& u_obs, double lambda);
Complex array_factor(const SurfaceGrid& grid, const Angle2D& target, const Angle2D& observed,
                     double lambda);

/// Path loss -20*log10|c| in dB; +infinity when |c| = 0.
double path_loss_db(Complex c);

/// Closed-form path loss with an ideal (fully coherent) phase profile and
/// center-distance amplitudes:
/// (4*pi)^4 d_bs^2 d_rx^2 / (lambda^4 Gt Gr gc^2 F_i F_o (N*M)^2), in dB.
double path_loss_ideal_db(double d_bs, double d_rx, double lambda, double gt, double gr,
                          double gc, double f_inc, double f_obs, long n_cells);

/// Equivalent radar cross section 4*pi*A^2*F(inc)*F(obs)/lambda^2 of an
/// ideally rephasing plate of area A with cell pattern exponent q.
double equivalent_rcs(double area, double lambda, const Angle2D& incident,
                      const Angle2D& observed, double q);

}  // namespace metaprism
