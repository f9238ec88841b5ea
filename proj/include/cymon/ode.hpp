#pragma once

// Monopole ODE systems on (0, rho_max): the full 6-field system, the
// complexified 4-field system and the reduced (a, phi) system, integrated by
// an embedded Dormand-Prince 5(4) pair with Hermite dense output, plus the
// singular-origin series seed, mass extraction and shooting.

#include <functional>
#include <string>
#include <vector>

#include "cymon/profile.hpp"

namespace cymon {

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rhs = std::function<std::vector<double>(double, const std::vector<double>&)>;
// stop(rho, y) -> true requests a halt after the current accepted step
using StopFn = std::function<bool(double, const std::vector<double>&)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-13;
    double h_init = 1e-6;
    double h_min = 1e-14;
    size_t max_steps = 4'000'000;
    StopFn stop;
};

struct SolutionProfile {
    std::vector<double> rho;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> dy;
    size_t steps = 0;
    bool stopped = false;  // stop callback fired before rho_max

    std::vector<double> eval(double rho_query) const;  // cubic Hermite
    std::vector<double> eval_deriv(double rho_query) const;
    double front_rho() const { return rho.front(); }
    double back_rho() const { return rho.back(); }
};

SolutionProfile integrate(const Rhs& f, double rho0, std::vector<double> y0, double rho_max,
                          const OdeOptions& opt = {});

// Max over sampled interior points of |y'(rho) - f(rho, y(rho))| on the dense
// output, scaled by 1 + |f|; an a-posteriori check that the trajectory solves
// the system it claims to.
double resubstitution_residual(const SolutionProfile& traj, const Rhs& f,
                               int n_samples = 200);

// Reduced system: y = (a, phi)
Rhs reduced_rhs(const RadialH2& bg);
// Full system: y = (phi, B1, B2, B3, B4, B5)
Rhs full_rhs(const RadialH2& bg);
// Complexified system: y = (phi, B1, Re f1, Im f1, Re f2, Im f2)
Rhs complex_rhs(const RadialH2& bg);

struct ReducedState {
    double a = 1.0, phi = 0.0;
};

// Series solution a = 1 + alpha rho^2 + a4 rho^4, phi = alpha rho + phi3 rho^3
// matched against h^2 = rho^2 (1 + p2 rho^2 + ...).
ReducedState series_seed(double alpha, double rho0, const RadialH2& bg);

// m = phi(rho_end) - tail(rho_end); requires |a(rho_end)| <= 1e-8.
struct MassResult {
    double mass = 0.0;
    double tail = 0.0;     // magnitude of the subtracted tail integral
    double a_end = 0.0;
    double rho_end = 0.0;
};
MassResult extract_mass(const SolutionProfile& traj, const RadialH2& bg);

struct ShootOptions {
    double rho0 = 1e-3;
    double rho_max = 0.0;       // 0: capped by the background table
    double rho_min_cover = 0.0; // do not stop before this radius even if a has decayed
    double mass_tol = 1e-7;
    double rtol = 1e-11;
};

struct ShootResult {
    double alpha = 0.0;
    double mass = 0.0;
    double tail = 0.0;
    double drift = 0.0;  // reserved for full-system runs
    size_t steps = 0;
};

// One reduced integration from the series seed; stops once a has decayed.
SolutionProfile solve_reduced(double alpha, const RadialH2& bg, const ShootOptions& opt);
ShootResult mass_of_alpha(double alpha, const RadialH2& bg, const ShootOptions& opt);

// Bisection on alpha < 0 using monotonicity of m(alpha).
ShootResult shoot_for_mass(double target_mass, const RadialH2& bg,
                           const ShootOptions& opt = {});

// b_{i+2} = (sum_{0<j<=i} phi_j b_{i+2-j}) / ((i+1)(i+2) - phi_0), b0=b1=0.
// Throws on a resonant denominator at i >= 1.
std::vector<double> series_recurrence(const std::vector<double>& phi_coeffs, double b2,
                                      int order);

// BPS monopole on flat R^3: a = 2 mu rho / sinh(2 mu rho),
// phi = 1/(2 rho) - mu coth(2 mu rho).
ReducedState flat_oracle(double mu, double rho);

}  // namespace cymon
