// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace metaprism {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void config_error(const std::string& msg) {
    throw std::invalid_argument("scenario: " + msg);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            config_error("unknown key \"" + it.key() + "\" in " + where);
}

double num(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj[key].is_number())
        config_error("key \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

}  // namespace

std::string to_string(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::metaprism: return "metaprism";
        case SurfaceKind::wall: return "wall";
        case SurfaceKind::both: return "both";
    }
    return "?";
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::specular: return "specular";
        case ProfileKind::beamsteer: return "beamsteer";
        case ProfileKind::focus: return "focus";
        case ProfileKind::ideal: return "ideal";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "specular") return ProfileKind::specular;
    if (s == "beamsteer") return ProfileKind::beamsteer;
    if (s == "focus") return ProfileKind::focus;
    if (s == "ideal") return ProfileKind::ideal;
    config_error("unknown profile kind \"" + s + "\"");
}

SurfaceGrid Scenario::prism_grid() const {
    return SurfaceGrid::with_extent(prism_lx, prism_ly, pitch_x(), pitch_y());
}

SurfaceGrid Scenario::wall_grid() const {
    return SurfaceGrid::with_extent(wall_lx, wall_ly, pitch_x(), pitch_y());
}

PhaseProfile Scenario::make_profile() const {
    const OfdmPlan p = plan();
    const Angle2D inc = incident_angle();
    const double theta_m = theta_m_deg * kPi / 180.0;
    switch (profile_kind) {
        case ProfileKind::specular:
            return SpecularProfile{};
        case ProfileKind::beamsteer: {
            BeamsteerProfile b;
            b.steer = beamsteer_coefficients(inc, theta_m, p.wavelength(), p.bandwidth);
            b.f_ref = p.f0;
            return b;
        }
        case ProfileKind::focus: {
            FocusProfile f;
            f.a_f = focus_coefficient(d_m, p, literal_focus_constant);
            const double theta_top = inc.theta + theta_m;
            f.steer = steer_to_target(inc, Angle2D{-theta_top, inc.phi}, p.wavelength(),
                                      p.f_high() - p.f_low());
            f.f_ref = p.f_low();
            return f;
        }
        case ProfileKind::ideal: {
            IdealProfile i;
            i.p_bs = bs;
            i.p_target = ideal_target;
            i.bs_mode = bs_mode;
            i.rx_mode = rx_mode;
            i.lambda = lambda();
            return i;
        }
    }
    config_error("unhandled profile kind");
}

PrismSurface Scenario::prism_surface() const {
    PrismSurface s;
    s.grid = prism_grid();
    s.cell = cell_model_for_pitch(pitch_x(), pitch_y(), lambda());
    s.profile = make_profile();
    return s;
}

WallSurface Scenario::wall_surface() const {
    WallSurface w;
    w.grid = wall_grid();
    w.material = material;
    if (surface_kind == SurfaceKind::both) {
        const SurfaceGrid pg = prism_grid();
        w.cutout_half_x = pg.lx() / 2.0;
        w.cutout_half_y = pg.ly() / 2.0;
    }
    return w;
}

LinkEnds Scenario::link_to(const Vec3& rx) const {
    LinkEnds ends;
    ends.bs = bs;
    ends.rx = rx;
    ends.gt = gt();
    ends.gr = gr();
    ends.bs_mode = bs_mode;
    ends.rx_mode = rx_mode;
    return ends;
}

std::vector<std::string> Scenario::validate() const {
    std::vector<std::string> problems;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok)
            problems.push_back(msg);
    };
    require(f0_hz > 0 && bandwidth_hz > 0 && k_count >= 1, "OFDM plan must have positive f0, W and K >= 1");
    require(prism_lx > 0 && prism_ly > 0, "metaprism extent must be positive");
    require(wall_lx > 0 && wall_ly > 0, "wall extent must be positive");
    require(bs.z() > 0, "base station must be in the front half-space (z > 0)");
    require(material.eps_r >= 1.0, "material eps_r must be >= 1");
    require(material.s2 >= 0.0 && material.s2 <= 1.0, "material S^2 must be in [0, 1]");
    require(material.r2 >= 0.0 && material.r2 <= 1.0, "material R^2 must be in [0, 1]");
    require(d_m > 0, "focus profile needs d_m > 0");
    require(users >= 0 && users <= k_count, "need 0 <= users <= subcarrier count");
    require(trials >= 1, "need at least one trial");
    if (region.kind == ReceiverRegion::Kind::grid) {
        require(region.step > 0, "receiver grid step must be positive");
        require(region.x_min <= region.x_max && region.z_min <= region.z_max,
                "receiver grid extents must be ordered");
        require(region.z_min > 0, "receiver grid must lie in the front half-space (z > 0)");
    } else {
        require(region.r_min > 0 && region.r_max >= region.r_min,
                "receiver ray range must be positive and ordered");
        require(std::abs(region.theta_deg) < 90.0, "receiver ray must point into the front half-space");
    }
    for (int k : map_k_list)
        require(k >= 1 && k <= k_count, "map_k_list entries must be valid subcarrier indices");
    return problems;
}

std::vector<std::string> Scenario::warnings() const {
    std::vector<std::string> notes;
    if (plan().wideband())
        notes.push_back("relative bandwidth W/f0 exceeds 0.05; narrowband assumptions degrade");
    const BoresightGain g = boresight_gain(pitch_x(), pitch_y(), lambda());
    if (g.q_clamped)
        notes.push_back("cell smaller than the unit-gain area; pattern exponent clamped to 0");
    if (profile_kind == ProfileKind::focus) {
        const double dfres = fresnel_distance(prism_grid().diameter(), lambda());
        if (d_m <= dfres)
            notes.push_back("focal distance d_m is at or below the Fresnel distance; model accuracy degrades");
    }
    return notes;
}

namespace {

Vec3 parse_position(const json& obj, const std::string& where) {
    check_keys(obj, where, {"x_m", "y_m", "z_m", "mode"});
    return Vec3(num(obj, "x_m", 0.0), num(obj, "y_m", 0.0), num(obj, "z_m", 0.0));
}

PropagationMode parse_mode(const json& value, const std::string& where) {
    const std::string s = value.get<std::string>();
    if (s == "exact")
        return PropagationMode::exact;
    if (s == "far_field")
        return PropagationMode::far_field;
    config_error("unknown propagation mode \"" + s + "\" in " + where);
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    check_keys(root, "scenario",
               {"surface", "profile", "ofdm", "link", "bs", "rx_mode", "receivers", "users",
                "trials", "seed", "weight_rule", "map_k_list", "threads"});
    Scenario sc;

    if (root.contains("surface")) {
        const json& s = root["surface"];
        check_keys(s, "surface",
                   {"kind", "lx_m", "ly_m", "dx_m", "dy_m", "wall_lx_m", "wall_ly_m", "material"});
        if (s.contains("kind")) {
            const std::string kind = s["kind"].get<std::string>();
            if (kind == "metaprism")
                sc.surface_kind = SurfaceKind::metaprism;
            else if (kind == "wall")
                sc.surface_kind = SurfaceKind::wall;
            else if (kind == "both")
                sc.surface_kind = SurfaceKind::both;
            else
                config_error("unknown surface kind \"" + kind + "\"");
        }
        sc.prism_lx = num(s, "lx_m", sc.prism_lx);
        sc.prism_ly = num(s, "ly_m", sc.prism_ly);
        sc.pitch_dx = num(s, "dx_m", 0.0);
        sc.pitch_dy = num(s, "dy_m", 0.0);
        sc.wall_lx = num(s, "wall_lx_m", sc.wall_lx);
        sc.wall_ly = num(s, "wall_ly_m", sc.wall_ly);
        if (s.contains("material")) {
            const json& m = s["material"];
            if (m.is_string()) {
                sc.material_name = m.get<std::string>();
                const auto preset = wall_material_preset(sc.material_name);
                if (!preset)
                    config_error("unknown material preset \"" + sc.material_name + "\"");
                sc.material = *preset;
            } else {
                check_keys(m, "material", {"eps_r", "tan_delta", "s2", "r2"});
                sc.material_name = "custom";
                sc.material.eps_r = num(m, "eps_r", 1.0);
                sc.material.tan_delta = num(m, "tan_delta", 0.0);
                sc.material.s2 = num(m, "s2", 0.0);
                sc.material.r2 = num(m, "r2", 1.0);
            }
        }
    }

    if (root.contains("profile")) {
        const json& p = root["profile"];
        check_keys(p, "profile",
                   {"kind", "theta_m_deg", "d_m_m", "literal_focus_constant", "target"});
        if (p.contains("kind"))
            sc.profile_kind = profile_kind_from_string(p["kind"].get<std::string>());
        sc.theta_m_deg = num(p, "theta_m_deg", sc.theta_m_deg);
        sc.d_m = num(p, "d_m_m", sc.d_m);
        if (p.contains("literal_focus_constant"))
            sc.literal_focus_constant = p["literal_focus_constant"].get<bool>();
        if (p.contains("target"))
            sc.ideal_target = parse_position(p["target"], "profile.target");
    }

    if (root.contains("ofdm")) {
        const json& o = root["ofdm"];
        check_keys(o, "ofdm", {"f0_ghz", "w_mhz", "subcarriers"});
        sc.f0_hz = num(o, "f0_ghz", sc.f0_hz / 1e9) * 1e9;
        sc.bandwidth_hz = num(o, "w_mhz", sc.bandwidth_hz / 1e6) * 1e6;
        sc.k_count = static_cast<int>(num(o, "subcarriers", sc.k_count));
    }

    if (root.contains("link")) {
        const json& l = root["link"];
        check_keys(l, "link", {"ptx_dbm", "gt_db", "gr_db", "nf_db", "t0_k"});
        sc.ptx_dbm = num(l, "ptx_dbm", sc.ptx_dbm);
        sc.gt_db = num(l, "gt_db", sc.gt_db);
        sc.gr_db = num(l, "gr_db", sc.gr_db);
        sc.nf_db = num(l, "nf_db", sc.nf_db);
        sc.t0_k = num(l, "t0_k", sc.t0_k);
    }

    if (root.contains("bs")) {
        sc.bs = parse_position(root["bs"], "bs");
        if (root["bs"].contains("mode"))
            sc.bs_mode = parse_mode(root["bs"]["mode"], "bs.mode");
    }
    if (root.contains("rx_mode"))
        sc.rx_mode = parse_mode(root["rx_mode"], "rx_mode");

    if (root.contains("receivers")) {
        const json& r = root["receivers"];
        check_keys(r, "receivers",
                   {"kind", "x_min_m", "x_max_m", "z_min_m", "z_max_m", "step_m", "theta_deg",
                    "phi_deg", "r_min_m", "r_max_m"});
        const std::string kind = r.contains("kind") ? r["kind"].get<std::string>() : "grid";
        if (kind == "grid") {
            sc.region.kind = ReceiverRegion::Kind::grid;
            sc.region.x_min = num(r, "x_min_m", 0.0);
            sc.region.x_max = num(r, "x_max_m", 0.0);
            sc.region.z_min = num(r, "z_min_m", 0.0);
            sc.region.z_max = num(r, "z_max_m", 0.0);
            sc.region.step = num(r, "step_m", 0.0);
        } else if (kind == "ray") {
            sc.region.kind = ReceiverRegion::Kind::ray;
            sc.region.theta_deg = num(r, "theta_deg", 0.0);
            sc.region.phi_deg = num(r, "phi_deg", 0.0);
            sc.region.r_min = num(r, "r_min_m", 0.0);
            sc.region.r_max = num(r, "r_max_m", 0.0);
        } else {
            config_error("unknown receiver region kind \"" + kind + "\"");
        }
    }

    if (root.contains("users"))
        sc.users = root["users"].get<int>();
    if (root.contains("trials"))
        sc.trials = root["trials"].get<int>();
    if (root.contains("seed"))
        sc.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("weight_rule")) {
        const std::string w = root["weight_rule"].get<std::string>();
        if (w == "literal")
            sc.weight_rule = WeightRule::literal;
        else if (w == "amplitude_consistent")
            sc.weight_rule = WeightRule::amplitude_consistent;
        else
            config_error("unknown weight rule \"" + w + "\"");
    }
    if (root.contains("map_k_list"))
        sc.map_k_list = root["map_k_list"].get<std::vector<int>>();
    if (root.contains("threads"))
        sc.threads = root["threads"].get<unsigned>();

    const auto problems = sc.validate();
    if (!problems.empty())
        config_error(problems.front());
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        config_error("cannot open scenario file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_canonical_json(const Scenario& sc) {
    json root;
    root["surface"] = {{"kind", to_string(sc.surface_kind)},
                       {"lx_m", sc.prism_lx},
                       {"ly_m", sc.prism_ly},
                       {"dx_m", sc.pitch_x()},
                       {"dy_m", sc.pitch_y()},
                       {"wall_lx_m", sc.wall_lx},
                       {"wall_ly_m", sc.wall_ly},
                       {"material",
                        {{"eps_r", sc.material.eps_r},
                         {"tan_delta", sc.material.tan_delta},
                         {"s2", sc.material.s2},
                         {"r2", sc.material.r2}}}};
    root["profile"] = {{"kind", to_string(sc.profile_kind)},
                       {"theta_m_deg", sc.theta_m_deg},
                       {"d_m_m", sc.d_m},
                       {"literal_focus_constant", sc.literal_focus_constant},
                       {"target", {{"x_m", sc.ideal_target.x()},
                                   {"y_m", sc.ideal_target.y()},
                                   {"z_m", sc.ideal_target.z()}}}};
    root["ofdm"] = {{"f0_ghz", sc.f0_hz / 1e9}, {"w_mhz", sc.bandwidth_hz / 1e6},
                    {"subcarriers", sc.k_count}};
    root["link"] = {{"ptx_dbm", sc.ptx_dbm}, {"gt_db", sc.gt_db}, {"gr_db", sc.gr_db},
                    {"nf_db", sc.nf_db}, {"t0_k", sc.t0_k}};
    root["bs"] = {{"x_m", sc.bs.x()}, {"y_m", sc.bs.y()}, {"z_m", sc.bs.z()},
                  {"mode", sc.bs_mode == PropagationMode::exact ? "exact" : "far_field"}};
    root["rx_mode"] = sc.rx_mode == PropagationMode::exact ? "exact" : "far_field";
    if (sc.region.kind == ReceiverRegion::Kind::grid) {
        root["receivers"] = {{"kind", "grid"},       {"x_min_m", sc.region.x_min},
                             {"x_max_m", sc.region.x_max}, {"z_min_m", sc.region.z_min},
                             {"z_max_m", sc.region.z_max}, {"step_m", sc.region.step}};
    } else {
        root["receivers"] = {{"kind", "ray"},
                             {"theta_deg", sc.region.theta_deg},
                             {"phi_deg", sc.region.phi_deg},
                             {"r_min_m", sc.region.r_min},
                             {"r_max_m", sc.region.r_max}};
    }
    root["users"] = sc.users;
    root["trials"] = sc.trials;
    root["seed"] = sc.seed;
    root["weight_rule"] =
        sc.weight_rule == WeightRule::literal ? "literal" : "amplitude_consistent";
    root["map_k_list"] = sc.map_k_list;
    return root.dump();
}

std::uint64_t scenario_hash(const Scenario& sc) {
    const std::string text = scenario_canonical_json(sc);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace metaprism
