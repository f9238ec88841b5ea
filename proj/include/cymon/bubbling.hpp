#pragma once

// Numerical witnesses for the two degeneration regimes of the monopole
// family: rescaled large-mass solutions against the flat BPS profile, and
// mass-recentered solutions against the zero-mass Dirac profile away from the
// zero section.

#include <vector>

#include "cymon/ode.hpp"

namespace cymon {

// sup over rho~ in (0, R] of |a(eta rho~) - a_BPS(rho~)| +
// |eta phi(eta rho~) - phi_BPS(rho~)| with the mass-1 flat profile as model.
double bps_comparison(const SolutionProfile& traj, double eta, double R,
                      int n_grid = 300);

struct DiracComparison {
    double error = 0.0;        // sup |(phi - m) - tail| + |a|
    double deriv_error = 0.0;  // sup |phi' + 1/(2h^2)| + |a'|
    double a_at_inner = 0.0;   // |a(rho1)|, the localization witness
};
DiracComparison dirac_comparison(const SolutionProfile& traj, double mass,
                                 const RadialH2& bg, double rho1, double rho2,
                                 int n_grid = 300);

struct BubbleRow {
    double lambda = 0.0;
    double mass = 0.0;  // extracted (negative) mass of the solution
    double eta = 0.0;   // 1/lambda
    double bps_error = 0.0;
    double dirac_error = 0.0;
    double dirac_deriv_error = 0.0;
    double a_at_inner = 0.0;
    double eta_best = 0.0;       // minimizer of the BPS error over the eta scan
    double bps_error_best = 0.0;
};

// Solves for mass -lambda, compares at eta = 1/lambda, and (optionally) scans
// eta over a decade around 1/lambda recording the minimizer.
BubbleRow bubble_row(double lambda, double R, double rho1, double rho2, const RadialH2& bg,
                     const ShootOptions& opt = {}, bool scan_eta = true);

// Flat-geometry oracle: (a,phi)(rho) -> (a(eta rho), eta phi(eta rho)) maps
// the mass-mu solution to the mass-(eta mu) one exactly; returns the sup
// mismatch of the integrated pipeline under this map.
double flat_scale_covariance_error(double mu, double eta, double rho0 = 1e-3);

}  // namespace cymon
