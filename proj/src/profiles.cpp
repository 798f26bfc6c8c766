// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace metaprism {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}

BoresightGain boresight_gain(double dx, double dy, double lambda) {
    if (dx <= 0.0 || dy <= 0.0 || lambda <= 0.0)
        throw std::invalid_argument("boresight_gain: pitch and wavelength must be positive");
    BoresightGain g;
    g.gc = 4.0 * kPi * dx * dy / (lambda * lambda);
    g.q = g.gc / 2.0 - 1.0;
    if (g.q < 0.0) {
        g.q = 0.0;
        g.q_clamped = true;
    }
    return g;
}

CellModel cell_model_for_pitch(double dx, double dy, double lambda) {
    const BoresightGain g = boresight_gain(dx, dy, lambda);
    CellModel cell;
    cell.q = g.q;
    cell.gc = g.gc;
    return cell;
}

double cell_pattern(const Angle2D& a, double q) {
    const double t = std::abs(a.theta);
    if (t > kPi / 2.0)
        return 0.0;
    return std::pow(std::cos(t), q);
}

SteerCoefficients steer_to_target(const Angle2D& incident, const Angle2D& target,
                                  double lambda, double delta_f_edge) {
    if (delta_f_edge == 0.0)
        throw std::invalid_argument("steer_to_target: zero edge frequency offset");
    const Eigen::Vector2d ui = direction_cosines(incident);
    const Eigen::Vector2d ut = direction_cosines(target);
    const double scale = -kTwoPi / (lambda * delta_f_edge);
    return {scale * (ui.x() + ut.x()), scale * (ui.y() + ut.y())};
}

SteerCoefficients beamsteer_coefficients(const Angle2D& incident, double theta_m,
                                         double lambda, double bandwidth) {
    const double theta_top = incident.theta + theta_m;
    if (std::abs(theta_top) > kPi / 2.0 + 1e-12)
        throw std::invalid_argument("beamsteer_coefficients: swept angle leaves the front half-space");
    // top subcarrier sits at f0 + W/2
    return steer_to_target(incident, Angle2D{-theta_top, incident.phi}, lambda, bandwidth / 2.0);
}

Eigen::Vector2d steered_cosines(const SteerCoefficients& c, const Angle2D& incident,
                                double lambda, double delta_f) {
    const Eigen::Vector2d ui = direction_cosines(incident);
    return {-ui.x() - c.a0 * lambda * delta_f / kTwoPi,
            -ui.y() - c.b0 * lambda * delta_f / kTwoPi};
}

namespace {

std::optional<Angle2D> angle_from_cosines(const Eigen::Vector2d& u) {
    const double s2 = u.squaredNorm();
    if (s2 > 1.0 + 1e-12)
        return std::nullopt;  // evanescent
    const double s = std::min(1.0, std::sqrt(s2));
    if (u.y() == 0.0)
        return Angle2D{std::asin(std::clamp(u.x(), -1.0, 1.0)), 0.0};
    if (u.y() > 0.0)
        return Angle2D{std::asin(s), std::atan2(u.y(), u.x())};
    return Angle2D{-std::asin(s), std::atan2(-u.y(), -u.x())};
}

}  // namespace

std::optional<Angle2D> steered_direction(const SteerCoefficients& c, const Angle2D& incident,
                                         const OfdmPlan& plan, int k) {
    const double delta_f = plan.frequency(k) - plan.f0;
    return angle_from_cosines(steered_cosines(c, incident, plan.wavelength(), delta_f));
}

double beamsteer_phase(double x, double y, double f, const SteerCoefficients& c, double f_ref) {
    return (c.a0 * x + c.b0 * y) * (f - f_ref);
}

double focus_coefficient(double d_m, const OfdmPlan& plan, bool literal_constant) {
    if (d_m <= 0.0)
        throw std::domain_error("focus_coefficient: focal distance must be positive");
    const double f1 = plan.f_low();
    if (literal_constant)
        return kTwoPi * f1 / (speed_of_light * d_m * plan.bandwidth);
    return kPi * f1 / (speed_of_light * d_m * (plan.f_high() - f1));
}

double focal_distance(double a_f, const OfdmPlan& plan, int k) {
    if (a_f <= 0.0)
        throw std::invalid_argument("focal_distance: coefficient must be positive");
    const double df = plan.frequency(k) - plan.f_low();
    if (df <= 0.0)
        return std::numeric_limits<double>::infinity();
    return kPi * plan.f_low() / (speed_of_light * a_f * df);
}

double focus_phase(double x, double y, const Angle2D& incident, const Angle2D& target,
                   double d_f, double lambda) {
    if (!(d_f > 0.0))
        throw std::domain_error("focus_phase: focal distance must be positive or infinite");
    const Eigen::Vector2d ui = direction_cosines(incident);
    const Eigen::Vector2d ut = direction_cosines(target);
    double psi = -kTwoPi / lambda * (x * (ui.x() + ut.x()) + y * (ui.y() + ut.y()));
    if (std::isfinite(d_f))
        psi += kTwoPi / lambda * (x * x + y * y) / (2.0 * d_f);
    return psi;
}

double ideal_phase(const Vec3& cell, const Vec3& p_bs, const Vec3& p, double f) {
    const double rt = (p_bs - cell).norm();
    const double rr = (p - cell).norm();
    if (rt == 0.0 || rr == 0.0)
        throw std::domain_error("ideal_phase: endpoint coincides with a cell");
    return kTwoPi * f / speed_of_light * (rt + rr);
}

double profile_phase(const PhaseProfile& profile, double x, double y, double f) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SpecularProfile>) {
                return kPi;
            } else if constexpr (std::is_same_v<T, BeamsteerProfile>) {
                return beamsteer_phase(x, y, f, p.steer, p.f_ref);
            } else if constexpr (std::is_same_v<T, FocusProfile>) {
                return (p.a_f * (x * x + y * y) + p.steer.a0 * x + p.steer.b0 * y) * (f - p.f_ref);
            } else {
                // ideal: conjugate of the modeled channel phase at (x, y)
                const Vec3 cell(x, y, 0.0);
                double psi = 0.0;
                if (p.bs_mode == PropagationMode::exact) {
                    psi += kTwoPi * f / speed_of_light * (p.p_bs - cell).norm();
                } else {
                    const Eigen::Vector2d ui = direction_cosines(angle_of(p.p_bs));
                    psi += -kTwoPi / p.lambda * (x * ui.x() + y * ui.y());
                }
                if (p.rx_mode == PropagationMode::exact) {
                    psi += kTwoPi * f / speed_of_light * (p.p_target - cell).norm();
                } else {
                    const Eigen::Vector2d uo = direction_cosines(angle_of(p.p_target));
                    psi += -kTwoPi / p.lambda * (x * uo.x() + y * uo.y());
                }
                return psi;
            }
        },
        profile);
}

AffinePhase profile_affine(const PhaseProfile& profile, const SurfaceGrid& grid) {
    const Eigen::ArrayXd xs = grid.xs();
    const Eigen::ArrayXd ys = grid.ys();
    AffinePhase out;
    out.base = Eigen::ArrayXXd::Zero(grid.nx, grid.ny);
    out.slope = Eigen::ArrayXXd::Zero(grid.nx, grid.ny);

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SpecularProfile>) {
                out.base.setConstant(kPi);
            } else if constexpr (std::is_same_v<T, BeamsteerProfile>) {
                const Eigen::ArrayXXd poly = (xs * p.steer.a0).replicate(1, grid.ny) +
                                             (ys * p.steer.b0).transpose().replicate(grid.nx, 1);
                out.slope = poly;
                out.base = -poly * p.f_ref;
            } else if constexpr (std::is_same_v<T, FocusProfile>) {
                for (int n = 0; n < grid.nx; ++n)
                    for (int m = 0; m < grid.ny; ++m) {
                        const double x = xs[n], y = ys[m];
                        const double s = p.a_f * (x * x + y * y) + p.steer.a0 * x + p.steer.b0 * y;
                        out.slope(n, m) = s;
                        out.base(n, m) = -s * p.f_ref;
                    }
            } else {
                for (int n = 0; n < grid.nx; ++n)
                    for (int m = 0; m < grid.ny; ++m) {
                        const double x = xs[n], y = ys[m];
                        const Vec3 cell(x, y, 0.0);
                        if (p.bs_mode == PropagationMode::exact) {
                            out.slope(n, m) += kTwoPi / speed_of_light * (p.p_bs - cell).norm();
                        } else {
                            const Eigen::Vector2d ui = direction_cosines(angle_of(p.p_bs));
                            out.base(n, m) += -kTwoPi / p.lambda * (x * ui.x() + y * ui.y());
                        }
                        if (p.rx_mode == PropagationMode::exact) {
                            out.slope(n, m) += kTwoPi / speed_of_light * (p.p_target - cell).norm();
                        } else {
                            const Eigen::Vector2d uo = direction_cosines(angle_of(p.p_target));
                            out.base(n, m) += -kTwoPi / p.lambda * (x * uo.x() + y * uo.y());
                        }
                    }
            }
        },
        profile);
    return out;
}

Eigen::ArrayXXd profile_alpha(const PhaseProfile& profile, const SurfaceGrid& grid) {
    if (std::holds_alternative<IdealProfile>(profile))
        throw std::invalid_argument(
            "profile_alpha: ideal profile has cell-dependent constant terms and no "
            "realizable common-reference slope form");
    return profile_affine(profile, grid).slope;
}

LcLoad lc_load_synthesis(double alpha, double r0, double f_r) {
    if (alpha >= 0.0)
        throw std::invalid_argument("lc_load_synthesis: slope must be negative for a positive inductance");
    if (r0 <= 0.0 || f_r <= 0.0)
        throw std::invalid_argument("lc_load_synthesis: resistance and resonance must be positive");
    LcLoad load;
    load.inductance_h = -alpha * r0 / (8.0 * kPi);
    const double w_r = kTwoPi * f_r;
    load.capacitance_f = 1.0 / (w_r * w_r * load.inductance_h);
    return load;
}

double lc_phase_exact(const LcLoad& load, double r0, double f) {
    // series LC reactance X = 2*pi*f*L - 1/(2*pi*f*C)
    const double w = kTwoPi * f;
    const double x = w * load.inductance_h - 1.0 / (w * load.capacitance_f);
    return -2.0 * std::atan(x / r0);
}

LcTable lc_table(const PhaseProfile& profile, const SurfaceGrid& grid, double r0, double f_r,
                 bool auto_offset) {
    LcTable table;
    table.f_r = f_r;
    table.alpha = profile_alpha(profile, grid);
    if (auto_offset) {
        const double amax = table.alpha.maxCoeff();
        const double amin = table.alpha.minCoeff();
        if (amax >= 0.0) {
            // keep every effective slope strictly negative; the common slope
            // acts as a cell-independent frequency term and does not steer
            const double margin = std::max(0.01 * (amax - amin), 8.0 * kPi * 1e-10 / r0);
            table.slope_offset = -(amax + margin);
            table.alpha += table.slope_offset;
        }
    }
    table.loads.reserve(static_cast<size_t>(grid.cell_count()));
    for (int n = 0; n < grid.nx; ++n)
        for (int m = 0; m < grid.ny; ++m)
            table.loads.push_back(lc_load_synthesis(table.alpha(n, m), r0, f_r));
    return table;
}

std::complex<double> reflection_coefficient(const CellModel& cell, double psi,
                                            const Angle2D& incident, const Angle2D& observed) {
    const double amp = std::sqrt(cell_pattern(incident, cell.q) * cell_pattern(observed, cell.q)) *
                       cell.gc * cell.gamma_magnitude;
    return std::polar(amp, psi);
}

}  // namespace metaprism
