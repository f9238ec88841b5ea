#include "cymon/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cymon {

namespace {

// k(cosh t) = (sinh 2t - 2t)/2, series-protected near 0.
double k_of_t(double t) {
    if (t < 0.5) {
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

// 7-point Gauss-Legendre on [-1,1]
constexpr double kGlX[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                            0.0,                 0.4058451513773972,  0.7415311855993945,
                            0.9491079123427585};
constexpr double kGlW[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                            0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                            0.1294849661688697};

template <class F>
double gl_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 7; ++i) s += kGlW[i] * f(c + h * kGlX[i]);
    return s * h;
}

// cubic Hermite on [x0,x1] with values/derivatives at the ends
double hermite(double x, double x0, double x1, double y0, double y1, double d0, double d1) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

double hermite_deriv(double x, double x0, double x1, double y0, double y1, double d0,
                     double d1) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * h * d0 + (-6 * s2 + 6 * s) * y1 +
            (3 * s2 - 2 * s) * h * d1) /
           h;
}

size_t bracket(const std::vector<double>& xs, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t i = (it == xs.begin()) ? 0 : static_cast<size_t>(it - xs.begin() - 1);
    return std::min(i, xs.size() - 2);
}

}  // namespace

double GeometryProfile::drho_dt(double t) const {
    if (t <= 0.0) return 0.5 * std::pow(eps_, 2.0 / 3.0);
    const double G = std::cbrt(3.0 * std::pow(eps_, 4.0) / 16.0) * std::cbrt(k_of_t(t));
    return eps_ * eps_ * std::sinh(t) / (4.0 * G);
}

double GeometryProfile::h2_of_t(double t) const {
    return std::cbrt(3.0 * std::pow(eps_, 4.0) / 128.0) * std::sinh(t) *
           std::cbrt(k_of_t(t));
}

GeometryProfile::GeometryProfile(double epsilon, double t_max, int n_log, int n_lin)
    : model_(epsilon), eps_(epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("GeometryProfile: epsilon must be positive");
    const double t_knee = 0.1, t_min = 1e-6;
    t_.push_back(0.0);
    for (int i = 0; i <= n_log; ++i)
        t_.push_back(t_min * std::pow(t_knee / t_min, double(i) / n_log));
    for (int i = 1; i <= n_lin; ++i)
        t_.push_back(t_knee + (t_max - t_knee) * double(i) / n_lin);
    const size_t n = t_.size();

    drho_.resize(n);
    for (size_t i = 0; i < n; ++i) drho_[i] = drho_dt(t_[i]);

    rho_.assign(n, 0.0);
    auto f_rho = [&](double t) { return drho_dt(t); };
    for (size_t i = 1; i < n; ++i)
        rho_[i] = rho_[i - 1] + gl_panel(f_rho, t_[i - 1], t_[i]);

    // fit the large-rho law on [0.6 rho_max, rho_max]
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0, sc = 0;
        int m = 0;
        for (size_t i = 0; i < n; ++i) {
            if (rho_[i] < 0.6 * rho_.back()) continue;
            const double lx = std::log(rho_[i]), ly = std::log(h2_of_t(t_[i]));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            sc += h2_of_t(t_[i]) / std::pow(rho_[i], 5);
            ++m;
        }
        slope5_ = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        c5_ = sc / m;
    }

    // Higgs tail int_rho^inf 1/(2h^2), accumulated from the table end with a
    // fitted power-law remainder beyond it.
    tail_rem_ = 1.0 / (8.0 * c5_ * std::pow(rho_.back(), 4));
    tail_.assign(n, 0.0);
    dtail_.assign(n, 0.0);
    auto f_tail = [&](double t) { return drho_dt(t) / (2.0 * h2_of_t(t)); };
    tail_.back() = tail_rem_;
    for (size_t i = n - 1; i-- > 1;)
        tail_[i] = tail_[i + 1] + gl_panel(f_tail, t_[i], t_[i + 1]);
    tail_[0] = tail_[1];  // placeholder: the tail diverges at rho = 0
    for (size_t i = 1; i < n; ++i) dtail_[i] = -f_tail(t_[i]);
    dtail_[0] = dtail_[1];

    // small-rho coefficient of h^2 = rho^2 (1 + p2 rho^2 + ...), Richardson
    {
        auto fp = [&](double rho) { return (h2(rho) / (rho * rho) - 1.0) / (rho * rho); };
        const double pa = fp(2e-2 * std::pow(eps_, 2.0 / 3.0));
        const double pb = fp(1e-2 * std::pow(eps_, 2.0 / 3.0));
        p2_ = (4.0 * pb - pa) / 3.0;
    }
}

double GeometryProfile::rho_of_t(double t) const {
    if (t <= 0.0) return 0.0;
    if (t > t_.back()) throw std::domain_error("GeometryProfile: t beyond table");
    const size_t i = bracket(t_, t);
    return hermite(t, t_[i], t_[i + 1], rho_[i], rho_[i + 1], drho_[i], drho_[i + 1]);
}

double GeometryProfile::t_of_rho(double rho) const {
    if (rho <= 0.0) return 0.0;
    if (rho > rho_.back()) throw std::domain_error("GeometryProfile: rho beyond table");
    const size_t i = bracket(rho_, rho);
    double lo = t_[i], hi = t_[i + 1];
    double t = lo + (hi - lo) * (rho - rho_[i]) / (rho_[i + 1] - rho_[i]);
    for (int it = 0; it < 60; ++it) {
        const double f =
            hermite(t, t_[i], t_[i + 1], rho_[i], rho_[i + 1], drho_[i], drho_[i + 1]) - rho;
        if (f > 0)
            hi = t;
        else
            lo = t;
        const double df =
            hermite_deriv(t, t_[i], t_[i + 1], rho_[i], rho_[i + 1], drho_[i], drho_[i + 1]);
        double tn = t - f / df;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t))) return tn;
        t = tn;
    }
    return t;
}

double GeometryProfile::h2(double rho) const {
    if (rho <= 0.0) return 0.0;
    if (rho < rho_[1]) return rho * rho * (1.0 + p2_ * rho * rho);  // below table resolution
    return h2_of_t(t_of_rho(rho));
}

double GeometryProfile::tail(double rho) const {
    if (!(rho > 0.0)) throw std::domain_error("GeometryProfile::tail: rho must be positive");
    if (rho >= rho_.back()) return 1.0 / (8.0 * c5_ * std::pow(rho, 4));
    const double rho_lo = rho_of_t(t_[1]);
    if (rho < rho_lo) {
        // series continuation: 1/(2h^2) = 1/(2 rho^2) - p2/2 + O(rho^2)
        return tail(rho_lo) + 0.5 * (1.0 / rho - 1.0 / rho_lo) - 0.5 * p2_ * (rho_lo - rho);
    }
    const double t = t_of_rho(rho);
    const size_t i = bracket(t_, t);
    return hermite(t, t_[i], t_[i + 1], tail_[i], tail_[i + 1], dtail_[i], dtail_[i + 1]);
}

double GeometryProfile::r_of_rho(double rho) const {
    return eps_ * std::sqrt(std::cosh(t_of_rho(rho)));
}

double GeometryProfile::rho_of_r(double r) const {
    if (r < eps_) throw std::domain_error("GeometryProfile::rho_of_r: r < epsilon");
    const double s = std::sqrt((r * r - eps_ * eps_) * (r * r + eps_ * eps_)) / (eps_ * eps_);
    return rho_of_t(std::asinh(s));  // t = acosh(r^2/eps^2), stably
}

std::vector<RadialPoint> GeometryProfile::points() const {
    std::vector<RadialPoint> out;
    out.reserve(t_.size());
    for (size_t i = 0; i < t_.size(); ++i) {
        RadialPoint p{};
        p.t = t_[i];
        p.rho = rho_[i];
        p.r = eps_ * std::sqrt(std::cosh(t_[i]));
        if (t_[i] > 0.0) {
            const RadialData d = model_.at(p.r);
            p.Fprime = d.Fprime.value();
            p.G = d.G.value();
            p.Gdot = d.Gdot.value();
            p.h2 = d.h2.value();
            p.Rplus = d.Rplus.value();
            p.Rminus = d.Rminus.value();
        } else {
            p.Fprime = std::pow(eps_, -2.0 / 3.0);  // limit of the k-form at x=1
            p.G = 0.0;
            p.Gdot = std::numeric_limits<double>::infinity();
            p.h2 = 0.0;
            p.Rplus = eps_;
            p.Rminus = 0.0;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace cymon
