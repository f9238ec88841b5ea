#include "cymon/bubbling.hpp"

#include <algorithm>
#include <cmath>

namespace cymon {

double bps_comparison(const SolutionProfile& traj, double eta, double R, int n_grid) {
    if (eta * R > traj.back_rho())
        throw OdeError("bps_comparison: solved range too short for eta * R");
    double sup = 0.0;
    for (int i = 1; i <= n_grid; ++i) {
        const double rt = R * double(i) / n_grid;
        const std::vector<double> y = traj.eval(eta * rt);
        const ReducedState flat = flat_oracle(1.0, rt);
        sup = std::max(sup, std::abs(y[0] - flat.a) + std::abs(eta * y[1] - flat.phi));
    }
    return sup;
}

DiracComparison dirac_comparison(const SolutionProfile& traj, double mass,
                                 const RadialH2& bg, double rho1, double rho2, int n_grid) {
    DiracComparison out;
    for (int i = 0; i <= n_grid; ++i) {
        const double rho = rho1 + (rho2 - rho1) * double(i) / n_grid;
        const std::vector<double> y = traj.eval(rho);
        const std::vector<double> d = traj.eval_deriv(rho);
        const double tail = bg.tail(rho);
        out.error = std::max(out.error, std::abs(y[1] - mass - tail) + std::abs(y[0]));
        out.deriv_error = std::max(
            out.deriv_error, std::abs(d[1] + 1.0 / (2.0 * bg.h2(rho))) + std::abs(d[0]));
    }
    out.a_at_inner = std::abs(traj.eval(rho1)[0]);
    return out;
}

BubbleRow bubble_row(double lambda, double R, double rho1, double rho2, const RadialH2& bg,
                     const ShootOptions& opt, bool scan_eta) {
    BubbleRow row;
    row.lambda = lambda;
    row.eta = 1.0 / lambda;

    ShootOptions so = opt;
    so.rho0 = std::min(so.rho0, 0.1 * row.eta * R / 300.0);
    // cover the annulus and the widest eta in the scan even after a decays
    so.rho_min_cover = std::max(rho2, std::sqrt(10.0) * row.eta * R);
    const ShootResult shot = shoot_for_mass(lambda, bg, so);
    const SolutionProfile traj = solve_reduced(shot.alpha, bg, so);
    row.mass = shot.mass;

    row.bps_error = bps_comparison(traj, row.eta, R);
    const DiracComparison dc = dirac_comparison(traj, shot.mass, bg, rho1, rho2);
    row.dirac_error = dc.error;
    row.dirac_deriv_error = dc.deriv_error;
    row.a_at_inner = dc.a_at_inner;

    row.eta_best = row.eta;
    row.bps_error_best = row.bps_error;
    if (scan_eta) {
        // one decade around 1/lambda, 21 logarithmic points
        for (int i = 0; i <= 20; ++i) {
            const double eta = (row.eta / std::sqrt(10.0)) * std::pow(10.0, double(i) / 20.0);
            if (eta * R > traj.back_rho()) continue;
            const double err = bps_comparison(traj, eta, R);
            if (err < row.bps_error_best) {
                row.bps_error_best = err;
                row.eta_best = eta;
            }
        }
    }
    return row;
}

double flat_scale_covariance_error(double mu, double eta, double rho0) {
    const FlatH2 flat;
    ShootOptions so;
    so.rho0 = std::min(rho0, rho0 * eta);
    const SolutionProfile base = solve_reduced(-2.0 * mu * mu / 3.0, flat, so);
    const double nu = eta * mu;
    const SolutionProfile mapped = solve_reduced(-2.0 * nu * nu / 3.0, flat, so);

    const double lo = 2.0 * so.rho0 / std::min(eta, 1.0);
    const double hi = 0.999 * std::min(base.back_rho() / eta, mapped.back_rho());
    double sup = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        const double rho = lo * std::pow(hi / lo, double(i) / n);
        const std::vector<double> y2 = mapped.eval(rho);
        const std::vector<double> y1 = base.eval(eta * rho);
        sup = std::max(sup, std::abs(y2[0] - y1[0]) + std::abs(y2[1] - eta * y1[1]));
    }
    return sup;
}

}  // namespace cymon
