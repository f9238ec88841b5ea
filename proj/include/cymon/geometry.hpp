#pragma once

// Closed-form radial data for the Stenzel metric on T*S^3 and its epsilon=0
// cone limit, plus assembly of the Kahler form, the two real parts of the
// holomorphic volume form, the metric coframe and the complex structure at a
// sample radius.

#include <memory>

#include "cymon/forms.hpp"
#include "cymon/jet.hpp"

namespace cymon {

// k(x) = x sqrt(x^2-1) - log(x + sqrt(x^2-1)) for x >= 1, with k(1)=0.
double k_fn(double x);

struct RadialData {
    double r = 0.0;
    double epsilon = 0.0;
    double t = 0.0;  // r^2 = eps^2 cosh t (0 on the cone branch)
    Jet Fprime, G, Gdot, Rplus, Rminus, h2;
};

class GeometryModel {
  public:
    virtual ~GeometryModel() = default;
    virtual RadialData at(double r) const = 0;
    virtual double epsilon() const = 0;
    virtual bool is_cone() const = 0;
    // Geodesic distance from the zero section (apex on the cone).
    virtual double rho_of_r(double r) const = 0;
};

class StenzelModel : public GeometryModel {
  public:
    explicit StenzelModel(double epsilon);
    RadialData at(double r) const override;
    double epsilon() const override { return eps_; }
    bool is_cone() const override { return false; }
    // Adaptive quadrature of int_eps^r l/(2G) dl with the sqrt endpoint
    // singularity removed by the substitution u = sqrt(l^2 - eps^2).
    double rho_of_r(double r) const override;

  private:
    double eps_;
};

class ConeModel : public GeometryModel {
  public:
    // eps_ref only normalizes h^2 = R+ R- G / eps_ref^2 so that the cone is
    // the literal epsilon -> 0 limit of the Stenzel h^2 at this reference.
    explicit ConeModel(double eps_ref = 1.0);
    RadialData at(double r) const override;
    double epsilon() const override { return 0.0; }
    bool is_cone() const override { return true; }
    double rho_of_r(double r) const override;  // (3/2)^{2/3} r^{2/3}
    double r_of_rho(double rho) const;

  private:
    double eps_ref_;
};

struct KahlerData {
    double r = 0.0;
    double epsilon = 0.0;
    RadialData radial;
    InvariantForm omega;   // Gdot dr^th1 + G(th24 + th35)
    InvariantForm Omega1;  // real part of the holomorphic volume form
    InvariantForm Omega2;  // imaginary part
    MetricCoeffs metric;
    ComplexStructure cs;
};

KahlerData assemble_kahler_data(const GeometryModel& model, double r);

// |2 Gdot G^2 - r R+ R-| / |r R+ R-| with Gdot from central differences of G;
// validates the identity that is used exactly everywhere else.
double monge_ampere_residual(const GeometryModel& model, double r);

}  // namespace cymon
