// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "metaprism/parallel.hpp"

namespace metaprism {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
}

std::string Table::to_string() const {
    std::string out;
    for (const auto& c : comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    out += header;
    out += '\n';
    for (const auto& r : rows) {
        out += r;
        out += '\n';
    }
    return out;
}

void Table::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write output file \"" + path + "\"");
    out << to_string();
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
    return splitmix64(s);
}

namespace {

double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> scenario_comments(const Scenario& sc, const std::string& command) {
    std::vector<std::string> c;
    c.push_back("metaprism " + command);
    char hash[32];
    std::snprintf(hash, sizeof(hash), "scenario_hash: %016llx",
                  static_cast<unsigned long long>(scenario_hash(sc)));
    c.push_back(hash);
    c.push_back("surface: " + to_string(sc.surface_kind) + "  profile: " + to_string(sc.profile_kind));
    c.push_back("f0_ghz: " + format_double(sc.f0_hz / 1e9) + "  w_mhz: " +
                format_double(sc.bandwidth_hz / 1e6) + "  subcarriers: " + std::to_string(sc.k_count));
    c.push_back("prng: mt19937_64 (splitmix64 per-trial streams)");
    for (const auto& w : sc.warnings())
        c.push_back("warning: " + w);
    return c;
}

std::vector<Vec3> region_grid_points(const ReceiverRegion& r) {
    std::vector<Vec3> pts;
    const int nx = static_cast<int>(std::floor((r.x_max - r.x_min) / r.step + 1e-9)) + 1;
    const int nz = static_cast<int>(std::floor((r.z_max - r.z_min) / r.step + 1e-9)) + 1;
    pts.reserve(static_cast<size_t>(nx) * nz);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nz; ++j)
            pts.emplace_back(r.x_min + i * r.step, 0.0, r.z_min + j * r.step);
    return pts;
}

Vec3 region_random_point(const ReceiverRegion& r, std::mt19937_64& rng) {
    if (r.kind == ReceiverRegion::Kind::grid) {
        const double x = r.x_min + (r.x_max - r.x_min) * uniform_double(rng);
        const double z = r.z_min + (r.z_max - r.z_min) * uniform_double(rng);
        return {x, 0.0, z};
    }
    const double rr = r.r_min + (r.r_max - r.r_min) * uniform_double(rng);
    const Angle2D dir = Angle2D::from_degrees(r.theta_deg, r.phi_deg);
    return position_of(dir, rr);
}

}  // namespace

Eigen::ArrayXcd scenario_spectrum(const Scenario& sc, const Vec3& rx) {
    const OfdmPlan plan = sc.plan();
    const LinkEnds ends = sc.link_to(rx);
    Eigen::ArrayXcd c = Eigen::ArrayXcd::Zero(plan.k_count);
    if (sc.surface_kind == SurfaceKind::metaprism || sc.surface_kind == SurfaceKind::both)
        c += channel_spectrum(sc.prism_surface(), ends, plan);
    if (sc.surface_kind == SurfaceKind::wall || sc.surface_kind == SurfaceKind::both)
        c += channel_spectrum(sc.wall_surface(), ends, plan);
    return c;
}

Eigen::ArrayXXd snr_matrix(const Scenario& sc, const std::vector<Vec3>& positions) {
    const OfdmPlan plan = sc.plan();
    const LinkBudget budget = sc.budget();
    const double scale = budget.ptx_w / budget.sigma_n2_w;
    Eigen::ArrayXXd snr(positions.size(), plan.k_count);
    parallel_for(positions.size(), resolve_threads(sc.threads), [&](size_t i) {
        snr.row(i) = (scenario_spectrum(sc, positions[i]).abs2() * scale).transpose();
    });
    return snr;
}

Table run_snr_map(const Scenario& sc) {
    if (sc.region.kind != ReceiverRegion::Kind::grid)
        throw std::invalid_argument("snr-map needs a grid receiver region");
    const std::vector<Vec3> pts = region_grid_points(sc.region);
    if (pts.empty())
        throw std::invalid_argument("snr-map: empty receiver grid");
    const std::vector<int> ks = sc.map_k_list;
    if (ks.empty())
        throw std::invalid_argument("snr-map: map_k_list is empty");

    const OfdmPlan plan = sc.plan();
    const LinkBudget budget = sc.budget();
    const double scale = budget.ptx_w / budget.sigma_n2_w;

    // SNR for the requested subcarriers only
    Eigen::ArrayXXd snr(pts.size(), ks.size());
    parallel_for(pts.size(), resolve_threads(sc.threads), [&](size_t i) {
        const Eigen::ArrayXcd c = scenario_spectrum(sc, pts[i]);
        for (size_t j = 0; j < ks.size(); ++j)
            snr(i, j) = std::norm(c[ks[j] - 1]) * scale;
    });

    Table t;
    t.comments = scenario_comments(sc, "snr-map");
    t.header = "x_m,z_m,k_best,snr_db_best";
    for (int k : ks)
        t.header += ",snr_db_k" + std::to_string(k);
    t.rows.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        int jbest = 0;
        for (size_t j = 1; j < ks.size(); ++j)
            if (snr(i, j) > snr(i, jbest))
                jbest = static_cast<int>(j);
        std::string row = format_double(pts[i].x()) + "," + format_double(pts[i].z()) + "," +
                          std::to_string(ks[jbest]) + "," +
                          format_double(10.0 * std::log10(snr(i, jbest)));
        for (size_t j = 0; j < ks.size(); ++j)
            row += "," + format_double(10.0 * std::log10(snr(i, j)));
        t.rows.push_back(row);
    }
    return t;
}

namespace {

/// Path loss of one profile at distance d along the scenario ray, evaluated
/// at the subcarrier whose steered direction lies closest to the ray.
struct PlSweepContext {
    Scenario sc;
    OfdmPlan plan;
    Angle2D ray;
    Angle2D incident;
    int k_eval = 1;       // center subcarrier
    double f_eval = 0.0;  // its frequency
};

double pl_at(const PlSweepContext& ctx, ProfileKind kind, double d) {
    const Vec3 rx = position_of(ctx.ray, d);
    PrismSurface surf = ctx.sc.prism_surface();
    switch (kind) {
        case ProfileKind::specular:
            surf.profile = SpecularProfile{};
            break;
        case ProfileKind::beamsteer:
            break;  // scenario profile, already steering
        case ProfileKind::focus: {
            // refocus on the evaluated distance, steered at the ray
            FocusProfile f;
            const double f1 = ctx.plan.f_low();
            f.a_f = kPi / (ctx.plan.wavelength() * d * (ctx.f_eval - f1));
            f.steer = steer_to_target(ctx.incident, ctx.ray, ctx.plan.wavelength(),
                                      ctx.f_eval - f1);
            f.f_ref = f1;
            surf.profile = f;
            break;
        }
        case ProfileKind::ideal: {
            IdealProfile i;
            i.p_bs = ctx.sc.bs;
            i.p_target = rx;
            i.bs_mode = ctx.sc.bs_mode;
            i.rx_mode = ctx.sc.rx_mode;
            i.lambda = ctx.plan.wavelength();
            surf.profile = i;
            break;
        }
    }
    return path_loss_db(composite_channel(surf, ctx.sc.link_to(rx), ctx.plan, ctx.k_eval));
}

int nearest_steered_subcarrier(const Scenario& sc, const OfdmPlan& plan, const Angle2D& ray) {
    // beamsteer profile: pick the subcarrier pointing closest to the ray
    const PhaseProfile profile = sc.make_profile();
    const auto* b = std::get_if<BeamsteerProfile>(&profile);
    if (b == nullptr)
        return (plan.k_count + 1) / 2;
    const Eigen::Vector2d u_ray = direction_cosines(ray);
    const int center = (plan.k_count + 1) / 2 + plan.k_count % 2 == 1 ? (plan.k_count + 1) / 2
                                                                      : plan.k_count / 2;
    int best = -1;
    double best_err = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= plan.k_count; ++k) {
        const Eigen::Vector2d u =
            steered_cosines(b->steer, sc.incident_angle(), plan.wavelength(),
                            plan.frequency(k) - b->f_ref);
        const double err = (u - u_ray).norm();
        // ties prefer the subcarrier nearest the band center
        if (err < best_err - 1e-12 ||
            (err < best_err + 1e-12 && std::abs(k - center) < std::abs(best - center))) {
            best_err = err;
            best = k;
        }
    }
    return best;
}

}  // namespace

Table run_pl_sweep(const Scenario& sc, const std::vector<ProfileKind>& profiles,
                   const std::vector<double>& distances) {
    if (sc.region.kind != ReceiverRegion::Kind::ray)
        throw std::invalid_argument("pl-sweep needs a ray receiver region");
    for (double d : distances)
        if (d <= 0.0)
            throw std::invalid_argument("pl-sweep: distances must be positive");

    PlSweepContext ctx{sc, sc.plan(), Angle2D::from_degrees(sc.region.theta_deg, sc.region.phi_deg),
                       sc.incident_angle(), 0, 0.0};
    ctx.k_eval = nearest_steered_subcarrier(sc, ctx.plan, ctx.ray);
    ctx.f_eval = ctx.plan.frequency(ctx.k_eval);

    Table t;
    t.comments = scenario_comments(sc, "pl-sweep");
    t.comments.push_back("eval_subcarrier: " + std::to_string(ctx.k_eval));
    t.header = "d_m";
    for (ProfileKind p : profiles)
        t.header += ",pl_" + to_string(p) + "_db";

    std::vector<std::string> rows(distances.size());
    parallel_for(distances.size(), resolve_threads(sc.threads), [&](size_t i) {
        std::string row = format_double(distances[i]);
        for (ProfileKind p : profiles)
            row += "," + format_double(pl_at(ctx, p, distances[i]));
        rows[i] = row;
    });
    t.rows = std::move(rows);
    return t;
}

namespace {

struct TrialStats {
    double mean_rate = 0.0;
    double frac_uncovered = 0.0;
};

TrialStats run_one_trial(const Scenario& sc, int users, std::uint64_t trial_seed) {
    std::mt19937_64 rng(trial_seed);
    std::vector<Vec3> pos(users);
    for (int u = 0; u < users; ++u)
        pos[u] = region_random_point(sc.region, rng);

    const Eigen::ArrayXXd snr = snr_matrix(sc, pos);
    const AssignmentPlan plan = assign_subcarriers(snr, sc.weight_rule);

    TrialStats stats;
    int uncovered = 0;
    double rate_sum = 0.0;
    for (int u = 0; u < users; ++u) {
        const int k = plan.subcarrier_of_user[u];
        if (k == 0) {
            ++uncovered;
            continue;
        }
        const double post = snr(u, k - 1) * plan.weights[k - 1] * plan.weights[k - 1];
        rate_sum += achievable_rate(post);
    }
    stats.mean_rate = rate_sum / users;
    stats.frac_uncovered = static_cast<double>(uncovered) / users;
    return stats;
}

}  // namespace

Table run_rate_sweep(const Scenario& sc, const std::vector<int>& user_counts, int trials,
                     std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("rate-sweep: need at least one trial");
    for (int u : user_counts)
        if (u > sc.k_count)
            throw std::invalid_argument("rate-sweep: more users than subcarriers");

    Table t;
    t.comments = scenario_comments(sc, "rate-sweep");
    t.comments.push_back("seed: " + std::to_string(seed) + "  trials: " + std::to_string(trials));
    t.comments.push_back(std::string("weight_rule: ") +
                         (sc.weight_rule == WeightRule::literal ? "literal" : "amplitude_consistent"));
    t.header = "users,mean_rate_bps_hz,frac_uncovered";

    for (int users : user_counts) {
        if (users <= 0)
            continue;  // empty table row set for zero users
        std::vector<TrialStats> stats(trials);
        // threads used inside snr_matrix stay serial here to keep one level
        Scenario inner = sc;
        inner.threads = 1;
        parallel_for(static_cast<size_t>(trials), resolve_threads(sc.threads), [&](size_t tr) {
            const std::uint64_t stream =
                static_cast<std::uint64_t>(users) * 0x10000ULL + static_cast<std::uint64_t>(tr);
            stats[tr] = run_one_trial(inner, users, mix_seed(seed, stream));
        });
        double rate = 0.0, unc = 0.0;
        for (const auto& s : stats) {
            rate += s.mean_rate;
            unc += s.frac_uncovered;
        }
        t.rows.push_back(std::to_string(users) + "," + format_double(rate / trials) + "," +
                         format_double(unc / trials));
    }
    return t;
}

Table run_array_factor(const Scenario& sc, const std::vector<int>& k_list, double theta_min_deg,
                       double theta_max_deg, double step_deg) {
    if (step_deg <= 0.0)
        throw std::invalid_argument("array-factor: step must be positive");
    const OfdmPlan plan = sc.plan();
    const PhaseProfile profile = sc.make_profile();
    SteerCoefficients steer;
    double f_ref = plan.f0;
    if (const auto* b = std::get_if<BeamsteerProfile>(&profile)) {
        steer = b->steer;
        f_ref = b->f_ref;
    } else if (const auto* f = std::get_if<FocusProfile>(&profile)) {
        steer = f->steer;
        f_ref = f->f_ref;
    } else if (std::get_if<SpecularProfile>(&profile)) {
        steer = SteerCoefficients{0.0, 0.0};
    } else {
        throw std::invalid_argument("array-factor requires a steering profile");
    }

    const SurfaceGrid grid = sc.prism_grid();
    const Angle2D inc = sc.incident_angle();
    const double nm = static_cast<double>(grid.cell_count());

    Table t;
    t.comments = scenario_comments(sc, "array-factor");
    t.header = "k,theta_deg,af_norm";
    const int steps = static_cast<int>(std::floor((theta_max_deg - theta_min_deg) / step_deg + 1e-9)) + 1;
    for (int k : k_list) {
        if (k < 1 || k > plan.k_count)
            throw std::invalid_argument("array-factor: subcarrier index out of range");
        const Eigen::Vector2d u0 =
            steered_cosines(steer, inc, plan.wavelength(), plan.frequency(k) - f_ref);
        for (int i = 0; i < steps; ++i) {
            const double theta_deg = theta_min_deg + i * step_deg;
            const Angle2D obs = Angle2D::from_degrees(theta_deg, sc.region.phi_deg);
            const double af =
                std::abs(array_factor(grid, u0, direction_cosines(obs), plan.wavelength())) / nm;
            t.rows.push_back(std::to_string(k) + "," + format_double(theta_deg) + "," +
                             format_double(af));
        }
    }
    return t;
}

Table run_lc_export(const Scenario& sc, double r0_ohms) {
    const OfdmPlan plan = sc.plan();
    const PhaseProfile profile = sc.make_profile();
    double f_ref = plan.f0;
    if (const auto* b = std::get_if<BeamsteerProfile>(&profile))
        f_ref = b->f_ref;
    else if (const auto* f = std::get_if<FocusProfile>(&profile))
        f_ref = f->f_ref;
    else if (std::get_if<IdealProfile>(&profile))
        throw std::invalid_argument(
            "lc-export: the ideal profile is not realizable as a common-reference load table");

    const SurfaceGrid grid = sc.prism_grid();
    const LcTable table = lc_table(profile, grid, r0_ohms, f_ref, true);

    Table t;
    t.comments = scenario_comments(sc, "lc-export");
    t.comments.push_back("r0_ohms: " + format_double(r0_ohms));
    t.comments.push_back("f_r_hz: " + format_double(table.f_r));
    t.comments.push_back("common_slope_offset_rad_per_hz: " + format_double(table.slope_offset));
    t.header = "n,m,l_henries,c_farads";
    size_t idx = 0;
    for (int n = 0; n < grid.nx; ++n)
        for (int m = 0; m < grid.ny; ++m, ++idx)
            t.rows.push_back(std::to_string(n) + "," + std::to_string(m) + "," +
                             format_double(table.loads[idx].inductance_h) + "," +
                             format_double(table.loads[idx].capacitance_f));
    return t;
}

Table run_assignment_dump(const Scenario& sc, int users, std::uint64_t seed) {
    if (users < 1)
        throw std::invalid_argument("assignment dump: need at least one user");
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(users) * 0x10000ULL));
    std::vector<Vec3> pos(users);
    for (int u = 0; u < users; ++u)
        pos[u] = region_random_point(sc.region, rng);
    const Eigen::ArrayXXd snr = snr_matrix(sc, pos);
    const AssignmentPlan plan = assign_subcarriers(snr, sc.weight_rule);

    Table t;
    t.comments = scenario_comments(sc, "assignment");
    t.comments.push_back("seed: " + std::to_string(seed));
    t.header = "user,subcarrier,omega,snr_db,rate_bps_hz";
    for (int u = 0; u < users; ++u) {
        const int k = plan.subcarrier_of_user[u];
        if (k == 0) {
            t.rows.push_back(std::to_string(u + 1) + ",0,0,-inf,0");
            continue;
        }
        const double w = plan.weights[k - 1];
        const double post = snr(u, k - 1) * w * w;
        t.rows.push_back(std::to_string(u + 1) + "," + std::to_string(k) + "," +
                         format_double(w) + "," + format_double(10.0 * std::log10(post)) + "," +
                         format_double(achievable_rate(post)));
    }
    return t;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (lo <= 0.0 || hi < lo || count < 1)
        throw std::invalid_argument("log_spaced: need 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
    for (int i = 0; i < count; ++i)
        out[i] = std::pow(10.0, std::log10(lo) + i * step);
    return out;
}

}  // namespace metaprism
