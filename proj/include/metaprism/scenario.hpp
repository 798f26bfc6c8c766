// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "metaprism/channel.hpp"
#include "metaprism/link.hpp"

namespace metaprism {

enum class SurfaceKind { metaprism, wall, both };
enum class ProfileKind { specular, beamsteer, focus, ideal };

std::string to_string(SurfaceKind k);
std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

/// Where receivers (map points or random users) live. Grid regions sample
/// the x-z plane at y = 0; ray regions sample distances along a direction.
struct ReceiverRegion {
    enum class Kind { grid, ray };
    Kind kind = Kind::grid;
    // grid
    double x_min = 0.0, x_max = 0.0;
    double z_min = 0.0, z_max = 0.0;
    double step = 0.0;
    // ray
    double theta_deg = 0.0, phi_deg = 0.0;
    double r_min = 0.0, r_max = 0.0;
};

/// Fully resolved experiment configuration. File keys carry explicit units
/// (f0_ghz, ptx_dbm, ...); angles are degrees in files, radians internally.
struct Scenario {
    SurfaceKind surface_kind = SurfaceKind::metaprism;

    double prism_lx = 0.5, prism_ly = 0.5;  // meters
    double pitch_dx = 0.0, pitch_dy = 0.0;  // meters; 0 selects lambda/2
    double wall_lx = 2.0, wall_ly = 2.0;    // meters
    std::string material_name = "aerated_concrete";
    WallMaterial material = WallMaterial{2.26, 0.0491, 0.1, 0.9};

    ProfileKind profile_kind = ProfileKind::beamsteer;
    double theta_m_deg = 0.0;  // steering sweep
    double d_m = 2.0;          // minimum focal distance (focus profile)
    bool literal_focus_constant = false;
    Vec3 ideal_target = Vec3(0.0, 0.0, 5.0);

    double f0_hz = 28e9;
    double bandwidth_hz = 100e6;
    int k_count = 256;

    double ptx_dbm = 20.0;
    double gt_db = 10.0;
    double gr_db = 2.0;
    double nf_db = 3.0;
    double t0_k = 290.0;

    Vec3 bs = Vec3(14.21, 0.0, 14.21);
    PropagationMode bs_mode = PropagationMode::far_field;
    PropagationMode rx_mode = PropagationMode::exact;

    ReceiverRegion region;
    int users = 1;
    int trials = 20;
    std::uint64_t seed = 1;
    WeightRule weight_rule = WeightRule::amplitude_consistent;
    std::vector<int> map_k_list = {1, 64, 128, 192, 256};
    unsigned threads = 0;  // 0 = hardware concurrency

    // --- resolved views -----------------------------------------------------
    OfdmPlan plan() const { return OfdmPlan(f0_hz, bandwidth_hz, k_count); }
    double lambda() const { return speed_of_light / f0_hz; }
    double pitch_x() const { return pitch_dx > 0.0 ? pitch_dx : lambda() / 2.0; }
    double pitch_y() const { return pitch_dy > 0.0 ? pitch_dy : lambda() / 2.0; }
    double ptx_w() const { return std::pow(10.0, (ptx_dbm - 30.0) / 10.0); }
    double gt() const { return std::pow(10.0, gt_db / 10.0); }
    double gr() const { return std::pow(10.0, gr_db / 10.0); }
    LinkBudget budget() const { return make_link_budget(plan(), ptx_w(), nf_db, t0_k); }

    SurfaceGrid prism_grid() const;
    SurfaceGrid wall_grid() const;
    PhaseProfile make_profile() const;
    PrismSurface prism_surface() const;
    WallSurface wall_surface() const;  // carries the prism cutout for "both"
    LinkEnds link_to(const Vec3& rx) const;

    /// Angle of the base station seen from the surface center.
    Angle2D incident_angle() const { return angle_of(bs); }

    /// Validation problems (empty when the scenario is usable).
    std::vector<std::string> validate() const;
    /// Non-fatal advisories (wideband plan, clamped q, ...).
    std::vector<std::string> warnings() const;
};

/// Parse from JSON text / load from a file. Unknown keys are rejected.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

/// Canonical serialized form (sorted keys, resolved defaults).
std::string scenario_canonical_json(const Scenario& sc);

/// FNV-1a 64-bit hash of the canonical form; echoed in output headers.
std::uint64_t scenario_hash(const Scenario& sc);

}  // namespace metaprism
