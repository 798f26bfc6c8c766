// SPDX-License-Identifier: Apache-2.0
//
// metaprism: link-level simulation of frequency-selective reflecting surfaces

#include "metaprism/link.hpp"

#include <cmath>
#include <stdexcept>

namespace metaprism {

double noise_variance(double delta_f, double noise_figure_db, double t0_kelvin) {
    if (delta_f <= 0.0)
        throw std::invalid_argument("noise_variance: subcarrier spacing must be positive");
    return boltzmann_constant * t0_kelvin * delta_f * std::pow(10.0, noise_figure_db / 10.0);
}

LinkBudget make_link_budget(const OfdmPlan& plan, double ptx_w, double noise_figure_db,
                            double t0_kelvin) {
    if (ptx_w <= 0.0)
        throw std::invalid_argument("make_link_budget: transmit power must be positive");
    LinkBudget b;
    b.ptx_w = ptx_w;
    b.noise_figure_db = noise_figure_db;
    b.t0_kelvin = t0_kelvin;
    b.sigma_n2_w = noise_variance(plan.delta_f(), noise_figure_db, t0_kelvin);
    return b;
}

double snr_linear(std::complex<double> c, double omega, const LinkBudget& budget) {
    return budget.ptx_w * std::norm(c * omega) / budget.sigma_n2_w;
}

double achievable_rate(double snr) {
    if (snr < 0.0)
        throw std::domain_error("achievable_rate: SNR must be nonnegative");
    return std::log2(1.0 + snr);
}

AssignmentPlan assign_subcarriers(const Eigen::ArrayXXd& snr, WeightRule rule) {
    const int users = static_cast<int>(snr.rows());
    const int subcarriers = static_cast<int>(snr.cols());
    if (users < 1)
        throw std::invalid_argument("assign_subcarriers: need at least one user");
    if (users > subcarriers)
        throw std::invalid_argument("assign_subcarriers: more users than subcarriers");
    if ((snr < 0.0).any())
        throw std::invalid_argument("assign_subcarriers: SNR entries must be nonnegative");

    Eigen::ArrayXXd work = snr;
    AssignmentPlan plan;
    plan.subcarrier_of_user.assign(users, 0);
    plan.weights = Eigen::ArrayXd::Zero(subcarriers);
    plan.uncovered.assign(users, 0);

    double refsnr = 0.0;
    std::vector<double> raw(users, 0.0);
    for (int step = 0; step < users; ++step) {
        // argmax re-scan; ties go to the lowest user, then lowest subcarrier
        int iu = -1, ik = -1;
        double msnr = 0.0;
        for (int u = 0; u < users; ++u)
            for (int k = 0; k < subcarriers; ++k)
                if (work(u, k) > msnr) {
                    msnr = work(u, k);
                    iu = u;
                    ik = k;
                }
        if (iu < 0) {
            if (step == 0)
                throw std::runtime_error("assign_subcarriers: all-zero SNR matrix");
            // remaining users see no usable subcarrier; leave them unassigned
            for (int u = 0; u < users; ++u)
                if (plan.subcarrier_of_user[u] == 0 && !plan.uncovered[u])
                    plan.uncovered[u] = 1;
            break;
        }
        if (step == 0)
            refsnr = msnr;
        plan.subcarrier_of_user[iu] = ik + 1;
        work.row(iu).setZero();
        work.col(ik).setZero();
        raw[iu] = refsnr / msnr;
    }

    // normalize over assigned subcarriers; for the literal rule `norm` is the
    // sum of weights, for the consistent rule the sum of squared weights
    double norm = 0.0;
    for (int u = 0; u < users; ++u)
        if (plan.subcarrier_of_user[u] != 0)
            norm += raw[u];
    for (int u = 0; u < users; ++u) {
        const int k = plan.subcarrier_of_user[u];
        if (k == 0)
            continue;
        if (rule == WeightRule::literal)
            plan.weights[k - 1] = raw[u] / norm;
        else
            plan.weights[k - 1] = std::sqrt(raw[u] / norm);
    }
    return plan;
}

}  // namespace metaprism
