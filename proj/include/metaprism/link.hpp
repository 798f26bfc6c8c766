// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <complex>
#include <vector>

#include "metaprism/geometry.hpp"

namespace metaprism {

/// Boltzmann constant [J/K] (SI definition).
inline constexpr double boltzmann_constant = 1.380649e-23;

/// Per-subcarrier thermal noise power k_B * T0 * delta_f * 10^(NF/10) [W].
double noise_variance(double delta_f, double noise_figure_db, double t0_kelvin = 290.0);

struct LinkBudget {
    double ptx_w = 1.0;
    double noise_figure_db = 0.0;
    double t0_kelvin = 290.0;
    double sigma_n2_w = 0.0;
};

LinkBudget make_link_budget(const OfdmPlan& plan, double ptx_w, double noise_figure_db,
                            double t0_kelvin = 290.0);

/// SNR = Ptx * |c * omega|^2 / sigma_n^2 (linear).
double snr_linear(std::complex<double> c, double omega, const LinkBudget& budget);

/// Achievable rate log2(1 + SNR) [bit/s/Hz].
double achievable_rate(double snr);

/// Weight rule of the greedy assignment. `literal` follows the pseudocode
/// weights omega = refsnr/msnr normalized to unit sum; `amplitude_consistent`
/// uses omega = sqrt(refsnr/msnr) normalized to unit power sum, which
/// equalizes the post-weight SNR across users exactly.
enum class WeightRule { literal, amplitude_consistent };

struct AssignmentPlan {
    /// Subcarrier index (1-based) assigned to each user; 0 when uncovered.
    std::vector<int> subcarrier_of_user;
    /// Per-subcarrier amplitude weights, zero on unassigned subcarriers.
    Eigen::ArrayXd weights;
    /// Users whose best remaining SNR was exactly zero.
    std::vector<char> uncovered;

    int users() const { return static_cast<int>(subcarrier_of_user.size()); }
};

/// Greedy equal-rate assignment: repeatedly pick the (user, subcarrier) pair
/// with the largest SNR, retire that row and column, and set the weight from
/// the first-picked reference SNR. Ties break toward the lowest user index,
/// then the lowest subcarrier index. Throws std::invalid_argument when
/// U > K and std::runtime_error when the matrix is all zero.
AssignmentPlan assign_subcarriers(const Eigen::ArrayXXd& snr, WeightRule rule);

}  // namespace metaprism
