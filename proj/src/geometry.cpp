#include "cymon/geometry.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace cymon {

namespace {

// (sinh(2t) - 2t)/2, series-protected near t = 0 where the two terms cancel.
double sinh2t_minus_2t_half(double t) {
    if (std::abs(t) < 0.5) {
        // sum_{k>=1} (2t)^{2k+1} / (2k+1)!  (halved)
        const double z = 2.0 * t;
        const double z2 = z * z;
        double term = z * z2 / 6.0;
        double sum = term;
        for (int k = 2; k <= 10; ++k) {
            term *= z2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
        }
        return 0.5 * sum;
    }
    return 0.5 * (std::sinh(2.0 * t) - 2.0 * t);
}

Jet jet_acosh(const Jet& x) {
    const double x0 = x.value();
    if (x0 <= 1.0) throw std::domain_error("jet_acosh: x <= 1");
    const double s = std::sqrt(x0 * x0 - 1.0);
    const double t0 = std::asinh(s);  // = acosh(x0), stable for x0 near 1
    const double d1 = 1.0 / s;
    const double d2 = -x0 / (s * s * s);
    const double d3 = (2.0 * x0 * x0 + 1.0) / (s * s * s * s * s);
    return jet_compose({t0, d1, d2, d3}, x);
}

}  // namespace

double k_fn(double x) {
    if (x < 1.0) throw std::domain_error("k_fn: x < 1");
    if (x == 1.0) return 0.0;
    const double s = std::sqrt(x * x - 1.0);
    const double t = std::asinh(s);
    // k(cosh t) = (sinh 2t - 2t)/2
    return sinh2t_minus_2t_half(t);
}

StenzelModel::StenzelModel(double epsilon) : eps_(epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("StenzelModel: epsilon must be positive");
}

RadialData StenzelModel::at(double r) const {
    if (!(r > eps_)) throw std::domain_error("StenzelModel::at: r <= epsilon");
    RadialData d;
    d.r = r;
    d.epsilon = eps_;
    const Jet rj = jet_var(r);
    const Jet x = rj * rj / (eps_ * eps_);
    const Jet tj = jet_acosh(x);
    d.t = tj.value();

    // k as a jet in r: the value from the stable hyperbolic form, the
    // derivatives from dk/dr = 4 r sinh(t)/eps^2 which is itself a jet.
    const Jet kprime = 4.0 / (eps_ * eps_) * (rj * jet_sinh(tj));
    Jet kj;
    kj.c[0] = sinh2t_minus_2t_half(d.t);
    kj.c[1] = kprime.c[0];
    kj.c[2] = kprime.c[1];
    kj.c[3] = kprime.c[2];

    d.G = std::cbrt(3.0 * std::pow(eps_, 4.0) / 16.0) * jet_cbrt(kj);
    d.Rplus = jet_sqrt((rj * rj + Jet(eps_ * eps_)) * 0.5);
    d.Rminus = jet_sqrt((rj * rj - Jet(eps_ * eps_)) * 0.5);
    d.Fprime = d.G / (d.Rplus * d.Rminus);
    // Monge-Ampere identity, exact for the true potential
    d.Gdot = rj * d.Rplus * d.Rminus / (2.0 * (d.G * d.G));
    d.h2 = d.Rplus * d.Rminus * d.G / (eps_ * eps_);
    return d;
}

double StenzelModel::rho_of_r(double r) const {
    if (r < eps_) throw std::domain_error("StenzelModel::rho_of_r: r < epsilon");
    if (r == eps_) return 0.0;
    // rho = int_eps^r l/(2G(l)) dl; with l = sqrt(u^2 + eps^2) the integrand
    // u/(2G) du is regular at u=0 since G ~ const * u there.
    const double umax = std::sqrt(r * r - eps_ * eps_);
    const double c = std::cbrt(3.0 * std::pow(eps_, 4.0) / 16.0);
    auto f = [&](double u) {
        const double l2 = u * u + eps_ * eps_;
        const double x = l2 / (eps_ * eps_);
        if (x <= 1.0) {
            // limit u/(2G) as u->0 using k ~ (4 sqrt2 /3) s^3, s = u/eps * (1+...)
            const double kcbrt_over_s = std::cbrt(4.0 * std::sqrt(2.0) / 3.0);
            return eps_ / (2.0 * c * kcbrt_over_s);
        }
        const double G = c * std::cbrt(k_fn(x));
        return u / (2.0 * G);
    };
    // adaptive Simpson
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double whole,
            int depth) -> double {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth <= 0 || std::abs(left + right - whole) < 1e-13 * (1.0 + std::abs(whole)))
            return left + right + (left + right - whole) / 15.0;
        return rec(a, m, fa, flm, fm, left, depth - 1) +
               rec(m, b, fm, frm, fb, right, depth - 1);
    };
    const double fa = f(0.0), fb = f(umax), fm = f(0.5 * umax);
    const double whole = umax / 6.0 * (fa + 4.0 * fm + fb);
    return rec(0.0, umax, fa, fm, fb, whole, 48);
}

ConeModel::ConeModel(double eps_ref) : eps_ref_(eps_ref) {
    if (!(eps_ref > 0.0)) throw std::domain_error("ConeModel: eps_ref must be positive");
}

RadialData ConeModel::at(double r) const {
    if (!(r > 0.0)) throw std::domain_error("ConeModel::at: r <= 0");
    RadialData d;
    d.r = r;
    d.epsilon = 0.0;
    const Jet rj = jet_var(r);
    d.Fprime = std::cbrt(1.5) * jet_pow(rj, -2.0 / 3.0);
    d.G = 0.5 * std::cbrt(1.5) * jet_pow(rj, 4.0 / 3.0);
    d.Rplus = rj * (1.0 / std::sqrt(2.0));
    d.Rminus = d.Rplus;
    d.Gdot = rj * d.Rplus * d.Rminus / (2.0 * (d.G * d.G));
    d.h2 = d.Rplus * d.Rminus * d.G / (eps_ref_ * eps_ref_);
    return d;
}

double ConeModel::rho_of_r(double r) const {
    return std::pow(1.5, 2.0 / 3.0) * std::pow(r, 2.0 / 3.0);
}

double ConeModel::r_of_rho(double rho) const {
    return std::pow(rho, 1.5) / 1.5;
}

KahlerData assemble_kahler_data(const GeometryModel& model, double r) {
    KahlerData kd;
    kd.radial = model.at(r);
    kd.r = r;
    kd.epsilon = model.epsilon();
    const RadialData& d = kd.radial;
    const Jet rj = jet_var(r);

    kd.omega = InvariantForm::scalar(2);
    kd.omega.add(kDrBit | theta_bit(1), d.Gdot);
    kd.omega.add(theta_bit(2) | theta_bit(4), d.G);
    kd.omega.add(theta_bit(3) | theta_bit(5), d.G);

    // Omega = Omega1 + i Omega2. The sign of Omega1 is pinned by the volume
    // identity omega^3/3! = -(i/8) Omega ^ conj(Omega); Omega2 is pinned by
    // the reduction of the monopole equations.
    kd.Omega1 = InvariantForm::scalar(3);
    kd.Omega1.add(theta_bit(1) | theta_bit(2) | theta_bit(3), d.Rplus * d.Rplus);
    kd.Omega1.add(theta_bit(1) | theta_bit(4) | theta_bit(5), -(d.Rminus * d.Rminus));
    kd.Omega1.add(kDrBit | theta_bit(2) | theta_bit(5), rj * 0.5);
    kd.Omega1.add(kDrBit | theta_bit(3) | theta_bit(4), rj * (-0.5));

    kd.Omega2 = InvariantForm::scalar(3);
    kd.Omega2.add(kDrBit | theta_bit(2) | theta_bit(3), rj * 0.5 * (d.Rplus / d.Rminus));
    kd.Omega2.add(kDrBit | theta_bit(4) | theta_bit(5), rj * (-0.5) * (d.Rminus / d.Rplus));
    kd.Omega2.add(theta_bit(1) | theta_bit(3) | theta_bit(4), d.Rplus * d.Rminus);
    kd.Omega2.add(theta_bit(1) | theta_bit(2) | theta_bit(5), -(d.Rplus * d.Rminus));

    kd.metric.g[0] = d.Gdot * rj / (2.0 * (d.Rplus * d.Rminus));
    kd.metric.g[1] = d.Gdot * 2.0 * (d.Rplus * d.Rminus) / rj;
    kd.metric.g[2] = d.G * d.Rplus / d.Rminus;
    kd.metric.g[3] = kd.metric.g[2];
    kd.metric.g[4] = d.G * d.Rminus / d.Rplus;
    kd.metric.g[5] = kd.metric.g[4];

    kd.cs.target = {1, 0, 4, 5, 2, 3};
    kd.cs.coef[0] = -2.0 * (d.Rplus * d.Rminus) / rj;     // I dr
    kd.cs.coef[1] = rj / (2.0 * (d.Rplus * d.Rminus));    // I th1
    kd.cs.coef[2] = -(d.Rminus / d.Rplus);                // I th2
    kd.cs.coef[3] = -(d.Rminus / d.Rplus);                // I th3
    kd.cs.coef[4] = d.Rplus / d.Rminus;                   // I th4
    kd.cs.coef[5] = d.Rplus / d.Rminus;                   // I th5
    return kd;
}

double monge_ampere_residual(const GeometryModel& model, double r) {
    // G varies on the scale r - eps near the zero section; keep the stencil
    // well inside that scale or the truncation error dominates.
    const double delta = 3e-6 * std::min(r, r - model.epsilon());
    const double gp = model.at(r + delta).G.value();
    const double gm = model.at(r - delta).G.value();
    const double gdot_num = (gp - gm) / (2.0 * delta);
    const RadialData d = model.at(r);
    const double rhs = r * d.Rplus.value() * d.Rminus.value();
    const double lhs = 2.0 * gdot_num * d.G.value() * d.G.value();
    return std::abs(lhs - rhs) / std::abs(rhs);
}

}  // namespace cymon
