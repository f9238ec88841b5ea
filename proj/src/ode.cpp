#include "cymon/ode.hpp"

#include <algorithm>
#include <cmath>

namespace cymon {

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order weights (for the error estimate, includes the FSAL stage)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::vector<double>;

void axpy(Vec& out, const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> ks) {
    const size_t n = y.size();
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& [w, k] : ks) s += w * (*k)[i];
        out[i] = y[i] + h * s;
    }
}

}  // namespace

std::vector<double> SolutionProfile::eval(double rq) const {
    if (rho.empty()) throw OdeError("eval on empty profile");
    if (rq <= rho.front()) return y.front();
    if (rq >= rho.back()) return y.back();
    auto it = std::upper_bound(rho.begin(), rho.end(), rq);
    const size_t i = static_cast<size_t>(it - rho.begin()) - 1;
    const double h = rho[i + 1] - rho[i];
    const double s = (rq - rho[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double w0 = 2 * s3 - 3 * s2 + 1, w1 = s3 - 2 * s2 + s;
    const double w2 = -2 * s3 + 3 * s2, w3 = s3 - s2;
    Vec out(y[i].size());
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = w0 * y[i][j] + w1 * h * dy[i][j] + w2 * y[i + 1][j] + w3 * h * dy[i + 1][j];
    return out;
}

std::vector<double> SolutionProfile::eval_deriv(double rq) const {
    if (rho.empty()) throw OdeError("eval_deriv on empty profile");
    if (rq <= rho.front()) return dy.front();
    if (rq >= rho.back()) return dy.back();
    auto it = std::upper_bound(rho.begin(), rho.end(), rq);
    const size_t i = static_cast<size_t>(it - rho.begin()) - 1;
    const double h = rho[i + 1] - rho[i];
    const double s = (rq - rho[i]) / h;
    const double s2 = s * s;
    const double w0 = (6 * s2 - 6 * s) / h, w1 = 3 * s2 - 4 * s + 1;
    const double w2 = (-6 * s2 + 6 * s) / h, w3 = 3 * s2 - 2 * s;
    Vec out(y[i].size());
    for (size_t j = 0; j < out.size(); ++j)
        out[j] = w0 * y[i][j] + w1 * dy[i][j] + w2 * y[i + 1][j] + w3 * dy[i + 1][j];
    return out;
}

double resubstitution_residual(const SolutionProfile& traj, const Rhs& f, int n_samples) {
    const double a = traj.front_rho(), b = traj.back_rho();
    double worst = 0.0;
    for (int i = 1; i < n_samples; ++i) {
        const double rho = a + (b - a) * double(i) / n_samples;
        const Vec y = traj.eval(rho);
        const Vec dyh = traj.eval_deriv(rho);
        const Vec rhs = f(rho, y);
        for (size_t j = 0; j < y.size(); ++j)
            worst = std::max(worst, std::abs(dyh[j] - rhs[j]) / (1.0 + std::abs(rhs[j])));
    }
    return worst;
}

SolutionProfile integrate(const Rhs& f, double rho0, std::vector<double> y0, double rho_max,
                          const OdeOptions& opt) {
    if (!(rho_max > rho0)) throw OdeError("integrate: rho_max must exceed rho0");
    SolutionProfile sol;
    const size_t n = y0.size();
    double x = rho0;
    Vec y = std::move(y0);
    Vec k1 = f(x, y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), y5(n);

    sol.rho.push_back(x);
    sol.y.push_back(y);
    sol.dy.push_back(k1);

    double h = std::min(opt.h_init, rho_max - rho0);
    while (x < rho_max) {
        if (sol.steps++ > opt.max_steps) throw OdeError("integrate: max step count exceeded");
        h = std::min(h, rho_max - x);

        axpy(yt, y, h, {{a21, &k1}});
        k2 = f(x + c2 * h, yt);
        axpy(yt, y, h, {{a31, &k1}, {a32, &k2}});
        k3 = f(x + c3 * h, yt);
        axpy(yt, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        k4 = f(x + c4 * h, yt);
        axpy(yt, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        k5 = f(x + c5 * h, yt);
        axpy(yt, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        k6 = f(x + h, yt);
        axpy(y5, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        k7 = f(x + h, y5);

        double err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / n);

        if (err <= 1.0) {
            x += h;
            y = y5;
            k1 = k7;  // FSAL
            sol.rho.push_back(x);
            sol.y.push_back(y);
            sol.dy.push_back(k1);
            if (opt.stop && opt.stop(x, y)) {
                sol.stopped = true;
                break;
            }
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= fac;
        if (h < opt.h_min) throw OdeError("integrate: step size underflow");
    }
    return sol;
}

Rhs reduced_rhs(const RadialH2& bg) {
    return [&bg](double rho, const Vec& y) -> Vec {
        const double a = y[0], phi = y[1];
        const double h2 = bg.h2(rho);
        return {2.0 * phi * a, -(1.0 - a * a) / (2.0 * h2)};
    };
}

Rhs full_rhs(const RadialH2& bg) {
    const double eps2 = bg.epsilon() * bg.epsilon();
    return [&bg, eps2](double rho, const Vec& y) -> Vec {
        const double phi = y[0], B1 = y[1], B2 = y[2], B3 = y[3], B4 = y[4], B5 = y[5];
        const double h2 = bg.h2(rho);
        const double q = 2.0 / (eps2 * h2);
        return {-(1.0 / (2.0 * h2)) *
                    (1.0 - (4.0 / eps2) * ((B4 * B4 + B5 * B5) - (B2 * B2 + B3 * B3))),
                -4.0 * (B2 * B5 - B4 * B3),
                -q * B1 * B5 - 2.0 * phi * B2,
                q * B1 * B4 - 2.0 * phi * B3,
                q * B1 * B3 + 2.0 * phi * B4,
                -q * B1 * B2 + 2.0 * phi * B5};
    };
}

Rhs complex_rhs(const RadialH2& bg) {
    const double eps2 = bg.epsilon() * bg.epsilon();
    return [&bg, eps2](double rho, const Vec& y) -> Vec {
        const double phi = y[0], B1 = y[1];
        const double f1r = y[2], f1i = y[3], f2r = y[4], f2i = y[5];
        const double h2 = bg.h2(rho);
        const double q = 2.0 * B1 / (eps2 * h2);
        // df1 = i q f2 - 2 phi f1, df2 = -i q f1 + 2 phi f2
        // |f1|^2 plays the role of B2^2+B3^2, |f2|^2 of B4^2+B5^2
        return {-(1.0 / (2.0 * h2)) *
                    (1.0 - (4.0 / eps2) * ((f2r * f2r + f2i * f2i) - (f1r * f1r + f1i * f1i))),
                4.0 * (f1i * f2r - f1r * f2i),  // 4 Im(f1 conj(f2))
                -q * f2i - 2.0 * phi * f1r,
                q * f2r - 2.0 * phi * f1i,
                q * f1i + 2.0 * phi * f2r,
                -q * f1r + 2.0 * phi * f2i};
    };
}

ReducedState series_seed(double alpha, double rho0, const RadialH2& bg) {
    const double p2 = bg.p2();
    const double phi3 = 0.4 * (alpha * alpha - alpha * p2);
    const double a4 = 0.5 * (phi3 + alpha * alpha);
    const double r2 = rho0 * rho0;
    return {1.0 + alpha * r2 + a4 * r2 * r2, alpha * rho0 + phi3 * r2 * rho0};
}

MassResult extract_mass(const SolutionProfile& traj, const RadialH2& bg) {
    MassResult m;
    m.rho_end = traj.back_rho();
    m.a_end = traj.y.back()[0];
    if (std::abs(m.a_end) > 1e-8)
        throw OdeError("extract_mass: a has not decayed at the evaluation radius");
    m.tail = bg.tail(m.rho_end);
    m.mass = traj.y.back()[1] - m.tail;
    return m;
}

SolutionProfile solve_reduced(double alpha, const RadialH2& bg, const ShootOptions& opt) {
    // Integrate in the shifted variable d = a - 1: storing a itself near the
    // origin turns 1 - a^2 (~ -2 alpha rho^2) into a catastrophic cancellation
    // whose noise is amplified like (rho_out/rho_in)^2 by the growing mode of
    // the linearization. The shift is affine, so the stored trajectory can be
    // converted back to (a, phi) without touching the Hermite data.
    const Rhs f = [&bg](double rho, const Vec& y) -> Vec {
        const double d = y[0], phi = y[1];
        const double h2 = bg.h2(rho);
        return {2.0 * phi * (1.0 + d), (2.0 * d + d * d) / (2.0 * h2)};
    };
    // series seed for d directly (series_seed would round through 1 + d)
    const double p2 = bg.p2();
    const double phi3 = 0.4 * (alpha * alpha - alpha * p2);
    const double a4 = 0.5 * (phi3 + alpha * alpha);
    const double r2 = opt.rho0 * opt.rho0;
    const double d0 = alpha * r2 + a4 * r2 * r2;
    const double phi0 = alpha * opt.rho0 + phi3 * r2 * opt.rho0;

    OdeOptions oo;
    oo.rtol = opt.rtol;
    oo.atol = 1e-14;
    oo.h_init = 0.1 * opt.rho0;
    const double cover = opt.rho_min_cover;
    oo.stop = [cover](double rho, const std::vector<double>& y) {
        return rho >= cover && std::abs(1.0 + y[0]) < 1e-12;
    };
    const double rmax = opt.rho_max > 0.0 ? opt.rho_max : bg.rho_limit();
    SolutionProfile sol = integrate(f, opt.rho0, {d0, phi0}, rmax, oo);
    for (auto& y : sol.y) y[0] += 1.0;
    return sol;
}

ShootResult mass_of_alpha(double alpha, const RadialH2& bg, const ShootOptions& opt) {
    const SolutionProfile traj = solve_reduced(alpha, bg, opt);
    const MassResult m = extract_mass(traj, bg);
    ShootResult r;
    r.alpha = alpha;
    r.mass = m.mass;
    r.tail = m.tail;
    r.steps = traj.steps;
    r.drift = resubstitution_residual(traj, reduced_rhs(bg), 64);
    return r;
}

ShootResult shoot_for_mass(double target_mass, const RadialH2& bg, const ShootOptions& opt) {
    if (!(target_mass > 0.0)) throw OdeError("shoot_for_mass: target mass must be positive");
    // |m(alpha)| grows with |alpha|; bisect on alpha in [lo, hi], lo < hi < 0.
    double lo = -1e6, hi = -1e-12;
    auto mag = [&](double alpha) -> double {
        try {
            return std::abs(mass_of_alpha(alpha, bg, opt).mass);
        } catch (const OdeError&) {
            return 0.0;  // a did not decay in range: mass magnitude below target
        }
    };
    ShootResult best;
    for (int it = 0; it < 200; ++it) {
        const double mid = -std::sqrt(lo * hi);  // geometric bisection on |alpha|
        const double m = mag(mid);
        if (std::abs(m - target_mass) < opt.mass_tol) {
            best = mass_of_alpha(mid, bg, opt);
            return best;
        }
        if (m < target_mass)
            hi = mid;  // need larger |alpha|: shrink toward lo
        else
            lo = mid;
        if (std::abs(hi - lo) < 1e-14 * std::abs(lo)) break;
    }
    const double mid = -std::sqrt(lo * hi);
    best = mass_of_alpha(mid, bg, opt);
    if (std::abs(std::abs(best.mass) - target_mass) > 10.0 * opt.mass_tol)
        throw OdeError("shoot_for_mass: bisection failed to meet the mass tolerance");
    return best;
}

std::vector<double> series_recurrence(const std::vector<double>& phi, double b2, int order) {
    if (order < 2) throw OdeError("series_recurrence: order must be >= 2");
    if (phi.empty()) throw OdeError("series_recurrence: empty potential series");
    std::vector<double> b(static_cast<size_t>(order) + 1, 0.0);
    b[2] = b2;
    for (int i = 1; i + 2 <= order; ++i) {
        const double den = double(i + 1) * double(i + 2) - phi[0];
        if (std::abs(den) < 1e-12)
            throw OdeError("series_recurrence: resonant indicial denominator");
        double s = 0.0;
        for (int j = 1; j <= i && j < static_cast<int>(phi.size()); ++j)
            s += phi[j] * b[i + 2 - j];
        b[i + 2] = s / den;
    }
    return b;
}

ReducedState flat_oracle(double mu, double rho) {
    const double x = 2.0 * mu * rho;
    if (std::abs(x) < 1e-4) {
        // a = x/sinh x, phi = -mu (x/3 - x^3/45 + ...)
        const double x2 = x * x;
        return {1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0,
                -mu * (x / 3.0 - x * x2 / 45.0)};
    }
    return {x / std::sinh(x), 1.0 / (2.0 * rho) - mu / std::tanh(x)};
}

}  // namespace cymon
