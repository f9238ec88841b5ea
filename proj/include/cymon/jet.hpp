#pragma once

// Truncated Taylor jets in the radial coordinate r (value + 3 derivatives).
// Radial coefficients of invariant forms carry jets so that the exterior
// derivative is exact at sample points instead of relying on finite
// differences.

#include <array>
#include <cmath>
#include <stdexcept>

namespace cymon {

inline constexpr int kJetOrder = 3;  // derivatives carried beyond the value

struct Jet {
    // c[0] = value, c[k] = k-th derivative with respect to r
    std::array<double, kJetOrder + 1> c{};

    Jet() = default;
    explicit Jet(double value) { c[0] = value; }
    Jet(double value, double d1, double d2 = 0.0, double d3 = 0.0)
        : c{value, d1, d2, d3} {}

    double value() const { return c[0]; }
    double dvalue() const { return c[1]; }

    Jet& operator+=(const Jet& o) {
        for (int i = 0; i <= kJetOrder; ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i <= kJetOrder; ++i) c[i] -= o.c[i];
        return *this;
    }
    Jet& operator*=(double s) {
        for (int i = 0; i <= kJetOrder; ++i) c[i] *= s;
        return *this;
    }

    bool finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator-(const Jet& a) {
    Jet r;
    for (int i = 0; i <= kJetOrder; ++i) r.c[i] = -a.c[i];
    return r;
}
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }

// Leibniz product, truncated at kJetOrder.
inline Jet operator*(const Jet& a, const Jet& b) {
    static constexpr double binom[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    Jet r;
    for (int n = 0; n <= kJetOrder; ++n)
        for (int k = 0; k <= n; ++k) r.c[n] += binom[n][k] * a.c[k] * b.c[n - k];
    return r;
}

// Compose an analytic function f (given by its derivatives at g.value())
// with the inner jet g. Faa di Bruno through order 3.
inline Jet jet_compose(const std::array<double, kJetOrder + 1>& f, const Jet& g) {
    const double g1 = g.c[1], g2 = g.c[2], g3 = g.c[3];
    Jet r;
    r.c[0] = f[0];
    r.c[1] = f[1] * g1;
    r.c[2] = f[2] * g1 * g1 + f[1] * g2;
    r.c[3] = f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3;
    return r;
}

inline Jet jet_inv(const Jet& a) {
    const double x = a.c[0];
    if (x == 0.0) throw std::domain_error("jet_inv: division by zero value");
    const double i1 = 1.0 / x;
    return jet_compose({i1, -i1 * i1, 2.0 * i1 * i1 * i1, -6.0 * i1 * i1 * i1 * i1}, a);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * jet_inv(b); }
inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator/(double s, const Jet& b) { return jet_inv(b) * s; }

inline Jet jet_pow(const Jet& a, double p) {
    const double x = a.c[0];
    if (x <= 0.0) throw std::domain_error("jet_pow: nonpositive base");
    const double f0 = std::pow(x, p);
    return jet_compose({f0, p * f0 / x, p * (p - 1) * f0 / (x * x),
                        p * (p - 1) * (p - 2) * f0 / (x * x * x)},
                       a);
}

inline Jet jet_sqrt(const Jet& a) { return jet_pow(a, 0.5); }
inline Jet jet_cbrt(const Jet& a) { return jet_pow(a, 1.0 / 3.0); }

inline Jet jet_sinh(const Jet& a) {
    const double s = std::sinh(a.c[0]), ch = std::cosh(a.c[0]);
    return jet_compose({s, ch, s, ch}, a);
}

inline Jet jet_cosh(const Jet& a) {
    const double s = std::sinh(a.c[0]), ch = std::cosh(a.c[0]);
    return jet_compose({ch, s, ch, s}, a);
}

// Identity jet for the radial variable itself.
inline Jet jet_var(double r) { return Jet(r, 1.0); }

}  // namespace cymon
