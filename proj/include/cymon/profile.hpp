#pragma once

// Tabulated radial data for one epsilon: the grid lives in t (r^2 =
// eps^2 cosh t, logarithmically refined near t=0), with rho(t) and the Higgs
// tail integral accumulated by Gauss-Legendre panels. Interpolation is cubic
// Hermite with exact nodal derivatives, inverted by Newton for rho -> t.

#include <vector>

#include "cymon/geometry.hpp"

namespace cymon {

// What the monopole ODEs need from the background geometry.
class RadialH2 {
  public:
    virtual ~RadialH2() = default;
    virtual double h2(double rho) const = 0;
    // tail(rho) = int_rho^inf 1/(2 h^2)
    virtual double tail(double rho) const = 0;
    // h^2 = rho^2 (1 + p2 rho^2 + ...) near the origin
    virtual double p2() const = 0;
    virtual double epsilon() const = 0;
    virtual double rho_limit() const = 0;  // largest trustworthy rho
};

// Flat R^3 fibre model, h = rho; the BPS oracle geometry.
class FlatH2 : public RadialH2 {
  public:
    double h2(double rho) const override { return rho * rho; }
    double tail(double rho) const override { return 0.5 / rho; }
    double p2() const override { return 0.0; }
    double epsilon() const override { return 1.0; }
    double rho_limit() const override { return 1e12; }
};

struct RadialPoint {
    double r, t, Fprime, G, Gdot, rho, h2, Rplus, Rminus;
};

class GeometryProfile : public RadialH2 {
  public:
    explicit GeometryProfile(double epsilon, double t_max = 20.0, int n_log = 220,
                             int n_lin = 2200);

    double epsilon() const override { return eps_; }
    double h2(double rho) const override;
    double tail(double rho) const override;
    double p2() const override { return p2_; }
    double rho_limit() const override { return 0.95 * rho_.back(); }

    double rho_of_t(double t) const;
    double t_of_rho(double rho) const;
    double r_of_rho(double rho) const;
    double rho_of_r(double r) const;  // closed-form t, then the table
    double rho_max() const { return rho_.back(); }

    // Fit of h^2 ~ c5 rho^5 over [0.6 rho_max, rho_max]; slope is the fitted
    // log-log exponent, c5 the window mean of h^2/rho^5.
    double c5() const { return c5_; }
    double large_rho_exponent() const { return slope5_; }

    std::vector<RadialPoint> points() const;

  private:
    double h2_of_t(double t) const;
    double drho_dt(double t) const;

    StenzelModel model_;
    double eps_;
    std::vector<double> t_, rho_, drho_, tail_, dtail_;
    double p2_ = 0.0, c5_ = 0.0, slope5_ = 0.0, tail_rem_ = 0.0;
};

}  // namespace cymon
