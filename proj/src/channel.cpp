// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace metaprism {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr Complex kJ{0.0, 1.0};

double checked_distance(const Vec3& a, const Vec3& b, const char* what) {
    const double r = (a - b).norm();
    if (r == 0.0)
        throw std::domain_error(std::string(what) + ": coincident points");
    return r;
}

}  // namespace

Complex incident_gain(const Vec3& p_bs, const Vec3& cell, double f, double gt,
                      PropagationMode mode, double lambda) {
    if (mode == PropagationMode::exact) {
        const double r = checked_distance(p_bs, cell, "incident_gain");
        return std::polar(std::sqrt(gt) * lambda / (4.0 * kPi * r),
                          -kTwoPi * f / speed_of_light * r);
    }
    const double r0 = p_bs.norm();
    if (r0 == 0.0)
        throw std::domain_error("incident_gain: endpoint at the surface center");
    const Eigen::Vector2d ui = direction_cosines(angle_of(p_bs));
    const double planar = kTwoPi / lambda * (cell.x() * ui.x() + cell.y() * ui.y());
    return std::polar(std::sqrt(gt) * lambda / (4.0 * kPi * r0), -kTwoPi * r0 / lambda + planar);
}

Complex reflected_gain(const Vec3& cell, const Vec3& p, double f, double gr,
                       PropagationMode mode, double lambda) {
    return incident_gain(p, cell, f, gr, mode, lambda);
}

CellPhasors link_cell_phasors(const SurfaceGrid& grid, const LinkEnds& ends, double lambda) {
    const Eigen::ArrayXd xs = grid.xs();
    const Eigen::ArrayXd ys = grid.ys();
    const int nx = grid.nx;
    const int ny = grid.ny;

    CellPhasors out;
    out.amplitude = Eigen::ArrayXXd::Constant(nx, ny, 1.0);
    out.phase_base = Eigen::ArrayXXd::Zero(nx, ny);
    out.phase_slope = Eigen::ArrayXXd::Zero(nx, ny);
    out.incident = angle_of(ends.bs);
    out.observed = angle_of(ends.rx);

    const double amp_scale = lambda * lambda / ((4.0 * kPi) * (4.0 * kPi)) *
                             std::sqrt(ends.gt) * std::sqrt(ends.gr);

    auto accumulate_endpoint = [&](const Vec3& endpoint, PropagationMode mode) {
        if (mode == PropagationMode::exact) {
            // true distance in amplitude and in the frequency-proportional phase
            for (int m = 0; m < ny; ++m) {
                const double y = ys[m];
                for (int n = 0; n < nx; ++n) {
                    const double x = xs[n];
                    const double r = std::sqrt((endpoint.x() - x) * (endpoint.x() - x) +
                                               (endpoint.y() - y) * (endpoint.y() - y) +
                                               endpoint.z() * endpoint.z());
                    if (r == 0.0)
                        throw std::domain_error("link_cell_phasors: endpoint on a cell");
                    out.amplitude(n, m) /= r;
                    out.phase_slope(n, m) -= kTwoPi / speed_of_light * r;
                }
            }
        } else {
            const double r0 = endpoint.norm();
            if (r0 == 0.0)
                throw std::domain_error("link_cell_phasors: endpoint at the surface center");
            const Eigen::Vector2d u = direction_cosines(angle_of(endpoint));
            out.amplitude /= r0;
            out.phase_base += (xs * (kTwoPi / lambda * u.x())).replicate(1, ny) +
                              (ys * (kTwoPi / lambda * u.y())).transpose().replicate(nx, 1) -
                              kTwoPi * r0 / lambda;
        }
    };
    accumulate_endpoint(ends.bs, ends.bs_mode);
    accumulate_endpoint(ends.rx, ends.rx_mode);
    out.amplitude *= amp_scale;
    return out;
}

Complex phasor_sum(const Eigen::ArrayXXd& amplitude, const Eigen::ArrayXXd& base,
                   const Eigen::ArrayXXd& slope, double f) {
    const Eigen::ArrayXXd angle = base + slope * f;
    return {(amplitude * angle.cos()).sum(), (amplitude * angle.sin()).sum()};
}

Eigen::ArrayXcd phasor_spectrum(const Eigen::ArrayXXd& amplitude, const Eigen::ArrayXXd& base,
                                const Eigen::ArrayXXd& slope, const OfdmPlan& plan) {
    const double f1 = plan.f_low();
    const double df = plan.delta_f();
    const Eigen::ArrayXXd angle1 = base + slope * f1;
    Eigen::ArrayXXcd cur = (amplitude * angle1.cos()).cast<Complex>() +
                           kJ * (amplitude * angle1.sin()).cast<Complex>();
    const Eigen::ArrayXXd step_angle = slope * df;
    const Eigen::ArrayXXcd step =
        step_angle.cos().cast<Complex>() + kJ * step_angle.sin().cast<Complex>();

    Eigen::ArrayXcd out(plan.k_count);
    for (int k = 0; k < plan.k_count; ++k) {
        out[k] = cur.sum();
        if (k + 1 < plan.k_count)
            cur *= step;
    }
    return out;
}

namespace {

// scalar prefactor of the prism reflection coefficient at surface-center angles
double prism_beta(const PrismSurface& s, const Angle2D& incident, const Angle2D& observed) {
    return std::sqrt(cell_pattern(incident, s.cell.q) * cell_pattern(observed, s.cell.q)) *
           s.cell.gc * s.cell.gamma_magnitude;
}

struct WallTerms {
    Complex specular;    // Gamma(theta_i) * R * sqrt(Gs)
    double diffuse_amp;  // S * sqrt(Gs * cos(theta_i) * cos(theta))
    Eigen::ArrayXXd diffuse_phase;
};

WallTerms wall_terms(const WallSurface& s, const Angle2D& incident, const Angle2D& observed,
                     double lambda) {
    WallTerms t;
    const double gs = s.grid.dx * s.grid.dy * 4.0 * kPi / (lambda * lambda);
    t.specular = fresnel_te(incident.theta, s.material) * s.material.r() * std::sqrt(gs);
    const double ci = std::max(0.0, std::cos(incident.theta));
    const double co = std::max(0.0, std::cos(observed.theta));
    t.diffuse_amp = s.material.s() * std::sqrt(gs * ci * co);

    const Eigen::Vector2d ui = direction_cosines(incident);
    const Eigen::Vector2d uo = direction_cosines(observed);
    const Eigen::ArrayXd xs = s.grid.xs();
    const Eigen::ArrayXd ys = s.grid.ys();
    t.diffuse_phase = (xs * (-kTwoPi / lambda * (ui.x() + uo.x()))).replicate(1, s.grid.ny) +
                      (ys * (-kTwoPi / lambda * (ui.y() + uo.y()))).transpose().replicate(s.grid.nx, 1);
    return t;
}

void apply_cutout(const WallSurface& s, Eigen::ArrayXXd& amplitude) {
    if (s.cutout_half_x <= 0.0 || s.cutout_half_y <= 0.0)
        return;
    const Eigen::ArrayXd xs = s.grid.xs();
    const Eigen::ArrayXd ys = s.grid.ys();
    for (int n = 0; n < s.grid.nx; ++n)
        for (int m = 0; m < s.grid.ny; ++m)
            if (std::abs(xs[n]) < s.cutout_half_x && std::abs(ys[m]) < s.cutout_half_y)
                amplitude(n, m) = 0.0;
}

}  // namespace

Complex composite_channel(const PrismSurface& surface, const LinkEnds& ends, const OfdmPlan& plan,
                          int k) {
    const double lambda = plan.wavelength();
    const CellPhasors ph = link_cell_phasors(surface.grid, ends, lambda);
    const AffinePhase psi = profile_affine(surface.profile, surface.grid);
    const double f = plan.frequency(k);
    return prism_beta(surface, ph.incident, ph.observed) *
           phasor_sum(ph.amplitude, ph.phase_base + psi.base, ph.phase_slope + psi.slope, f);
}

Eigen::ArrayXcd channel_spectrum(const PrismSurface& surface, const LinkEnds& ends,
                                 const OfdmPlan& plan) {
    const double lambda = plan.wavelength();
    const CellPhasors ph = link_cell_phasors(surface.grid, ends, lambda);
    const AffinePhase psi = profile_affine(surface.profile, surface.grid);
    return prism_beta(surface, ph.incident, ph.observed) *
           phasor_spectrum(ph.amplitude, ph.phase_base + psi.base, ph.phase_slope + psi.slope, plan);
}

Complex composite_channel(const WallSurface& surface, const LinkEnds& ends, const OfdmPlan& plan,
                          int k) {
    const double lambda = plan.wavelength();
    CellPhasors ph = link_cell_phasors(surface.grid, ends, lambda);
    apply_cutout(surface, ph.amplitude);
    const WallTerms t = wall_terms(surface, ph.incident, ph.observed, lambda);
    const double f = plan.frequency(k);
    const Complex plain = phasor_sum(ph.amplitude, ph.phase_base, ph.phase_slope, f);
    const Complex shifted =
        phasor_sum(ph.amplitude, ph.phase_base + t.diffuse_phase, ph.phase_slope, f);
    return t.specular * plain + t.diffuse_amp * shifted;
}

Eigen::ArrayXcd channel_spectrum(const WallSurface& surface, const LinkEnds& ends,
                                 const OfdmPlan& plan) {
    const double lambda = plan.wavelength();
    CellPhasors ph = link_cell_phasors(surface.grid, ends, lambda);
    apply_cutout(surface, ph.amplitude);
    const WallTerms t = wall_terms(surface, ph.incident, ph.observed, lambda);
    const Eigen::ArrayXcd plain = phasor_spectrum(ph.amplitude, ph.phase_base, ph.phase_slope, plan);
    const Eigen::ArrayXcd shifted =
        phasor_spectrum(ph.amplitude, ph.phase_base + t.diffuse_phase, ph.phase_slope, plan);
    return t.specular * plain + t.diffuse_amp * shifted;
}

namespace {

// sum over n = 0..count-1 of e^{j*n*phase}
Complex dirichlet_sum(int count, double phase) {
    const double half = phase / 2.0;
    if (std::abs(std::sin(half)) < 1e-9) {
        Complex acc = 0.0;
        for (int n = 0; n < count; ++n)
            acc += std::polar(1.0, n * phase);
        return acc;
    }
    const double ratio = std::sin(count * half) / std::sin(half);
    return std::polar(ratio, (count - 1) * half);
}

}  // namespace

Complex array_factor(const SurfaceGrid& grid, const Eigen::Vector2d& u_target,
                     const Eigen::Vector2d& u_obs, double lambda) {
    const double px = kTwoPi * grid.dx / lambda * (u_obs.x() - u_target.x());
    const double py = kTwoPi * grid.dy / lambda * (u_obs.y() - u_target.y());
    return dirichlet_sum(grid.nx, px) * dirichlet_sum(grid.ny, py);
}

Complex array_factor(const SurfaceGrid& grid, const Angle2D& target, const Angle2D& observed,
                     double lambda) {
    return array_factor(grid, direction_cosines(target), direction_cosines(observed), lambda);
}

double path_loss_db(Complex c) {
    const double a = std::abs(c);
    if (a == 0.0)
        return std::numeric_limits<double>::infinity();
    return -20.0 * std::log10(a);
}

double path_loss_ideal_db(double d_bs, double d_rx, double lambda, double gt, double gr,
                          double gc, double f_inc, double f_obs, long n_cells) {
    const double four_pi = 4.0 * kPi;
    const double num = four_pi * four_pi * four_pi * four_pi * d_bs * d_bs * d_rx * d_rx;
    const double den = lambda * lambda * lambda * lambda * gt * gr * gc * gc * f_inc * f_obs *
                       static_cast<double>(n_cells) * static_cast<double>(n_cells);
    return 10.0 * std::log10(num / den);
}

double equivalent_rcs(double area, double lambda, const Angle2D& incident,
                      const Angle2D& observed, double q) {
    if (area <= 0.0)
        throw std::domain_error("equivalent_rcs: area must be positive");
    return 4.0 * kPi * area * area * cell_pattern(incident, q) * cell_pattern(observed, q) /
           (lambda * lambda);
}

}  // namespace metaprism
