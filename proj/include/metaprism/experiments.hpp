// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metaprism/scenario.hpp"

namespace metaprism {

/// Deterministic tabular result: comment block, header row, data rows.
/// All numeric formatting happens at construction, so two runs of the same
/// build compare byte-identical.
struct Table {
    std::vector<std::string> comments;  // without the leading "# "
    std::string header;                 // comma-separated column names
    std::vector<std::string> rows;      // comma-separated cells

    std::string to_string() const;
    void write_file(const std::string& path) const;
};

/// "%.10g" formatting used for every floating-point cell.
std::string format_double(double v);

// --- seeded randomness -------------------------------------------------------
// Documented generator: mt19937_64, one stream per (user-count, trial) pair,
// seeded through splitmix64. Uniform doubles take the top 53 bits.

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// SNR(u, k) at unit weight for each position (rows) and subcarrier (cols).
Eigen::ArrayXXd snr_matrix(const Scenario& sc, const std::vector<Vec3>& positions);

/// End-to-end channel spectrum at one position for the scenario surface(s).
Eigen::ArrayXcd scenario_spectrum(const Scenario& sc, const Vec3& rx);

/// SNR map over the receiver region: one row per point with the best
/// subcarrier among map_k_list and the per-subcarrier SNRs.
Table run_snr_map(const Scenario& sc);

/// Path loss versus receiver distance along the scenario ray for the given
/// profiles. The focus column refocuses at each evaluated distance; the
/// ideal column conjugates the modeled channel phase at the receiver point.
Table run_pl_sweep(const Scenario& sc, const std::vector<ProfileKind>& profiles,
                   const std::vector<double>& distances);

/// Mean per-user achievable rate and uncovered fraction versus user count,
/// averaged over seeded trials with users placed uniformly in the region.
Table run_rate_sweep(const Scenario& sc, const std::vector<int>& user_counts, int trials,
                     std::uint64_t seed);

/// Normalized equivalent array factor cuts |AF|/(N*M) over theta for the
/// requested subcarriers (phi = 0 plane).
Table run_array_factor(const Scenario& sc, const std::vector<int>& k_list, double theta_min_deg,
                       double theta_max_deg, double step_deg);

/// Per-cell series-LC load table realizing the scenario profile.
Table run_lc_export(const Scenario& sc, double r0_ohms);

/// Assignment detail (user, subcarrier, omega, snr_dB, rate) for one seeded
/// draw of `users` receivers.
Table run_assignment_dump(const Scenario& sc, int users, std::uint64_t seed);

/// Log-spaced distances, endpoints included.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace metaprism
