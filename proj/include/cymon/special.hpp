#pragma once

// Closed-form solution families: Dirac monopoles (abelian, singular along the
// zero section), cone monopoles and the cone HYM system, the explicit
// irreducible HYM connection, plus the zero-section extension analysis
// (exponent fits and the curvature components I1..I8).

#include <array>
#include <vector>

#include "cymon/fields.hpp"
#include "cymon/ode.hpp"
#include "cymon/profile.hpp"

namespace cymon {

// Radial background of the cone: h^2 = 2 rho^5 / (27 eps_ref^2) exactly.
class ConeH2 : public RadialH2 {
  public:
    explicit ConeH2(double eps_ref = 1.0) : c5_(2.0 / (27.0 * eps_ref * eps_ref)) {}
    double h2(double rho) const override { return c5_ * rho * rho * rho * rho * rho; }
    double tail(double rho) const override { return 1.0 / (8.0 * c5_ * rho * rho * rho * rho); }
    double p2() const override { return 0.0; }
    double epsilon() const override { return 1.0; }
    double rho_limit() const override { return 1e12; }
    double c5() const { return c5_; }

  private:
    double c5_;
};

// --- Dirac Calabi-Yau monopoles ---------------------------------------------

// phi = m + l * int_rho^inf 1/(2 h^2); the integration constant is fixed at
// infinity (phi -> m), so the small-rho constant term is an output.
double dirac_higgs(const RadialH2& bg, int l, double m, double rho);

// A = A_c^l + A1 theta^1 (x) T1 with A1 = C / G^2.
InvariantConnection dirac_connection(const GeometryModel& model, int l, double C, double r);

// Higgs jet at radius r (value from the tail table, derivatives closed-form).
Jet dirac_higgs_jet(const GeometryModel& model, const RadialH2& bg, int l, double m, double r);

struct DiracHarmonicity {
    double star_coeff = 0.0;  // theta^{12345} coefficient of *(d phi)
    double residual = 0.0;    // |d * d phi| relative to the coefficient scale
};
// *(d phi) must be a constant multiple of theta^{12345}; d of it must vanish.
DiracHarmonicity dirac_harmonicity(const GeometryModel& model, int l, double r);

// Monopole residuals of the Dirac family (works on both Stenzel and cone; on
// the cone pass m as the constant Higgs value and l, C as in the connection).
MonopoleResiduals dirac_residuals(const GeometryModel& model, const RadialH2& bg, int l,
                                  double C, double m, double r);

// |A - A_c^l|_g at radius r (the metric norm of the A1 theta^1 term).
double dirac_connection_decay(const GeometryModel& model, double C, double r);

// Least-squares slope of log|y| against log|x|.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// --- Cone HYM system ---------------------------------------------------------

struct ConeHymResult {
    SolutionProfile traj;   // y = (B1, B4)
    bool b4_decays = false;
    bool blow_up = false;
};
// dB1/drho = -s 18 B4^2, d(B4^2)/drho = s (3/rho^5) B1 B4^2 with s = +-1.
ConeHymResult cone_hym_irreducible(double b1_0, double b4_0, double rho0, double rho_max,
                                   int sign_branch = +1);
Rhs cone_hym_rhs(int sign_branch);

// --- Irreducible HYM connection on Stenzel -----------------------------------

// A = A_c^1 + (eps/(2 R+)) (theta^4 (x) T2 + theta^5 (x) T3).
InvariantConnection hym_connection(const GeometryModel& model, double r);

// The displayed curvature, assembled term by term for comparison with the
// engine: -1/2 theta^23 T1 - (R-^2/(2R+^2)) theta^45 T1
//         + (eps/(2R+)) (theta^12 T2 + theta^13 T3)
//         - (eps r/(4R+^3)) (dr theta^4 T2 + dr theta^5 T3).
InvariantForm hym_displayed_curvature(const RadialData& d);

// --- Curvature components and extension over the zero section ----------------

// The eight orthonormal-frame curvature component functions in the gauge
// B2 = B5 = 0, evaluated from (B1, B3, B4) and their rho-derivatives.
struct CurvatureComponents {
    std::array<double, 8> I{};
    double max_abs() const;
};
CurvatureComponents curvature_components(double rho, double B1, double dB1, double B3,
                                         double dB3, double B4, double dB4,
                                         const GeometryProfile& bg);

struct ExtensionReport {
    double b1_exponent = 0.0;  // +inf-like sentinel 99 when the field vanishes
    double b3_exponent = 0.0;
    double b4_at_zero = 0.0;
    double b4_exponent = 0.0;  // exponent of B4 - b4_at_zero
    bool extends = false;
};

// Fits over samples (rho_i, B1, B3, B4) on a window [rho0, 10 rho0]; the
// verdict follows the thresholds B1 = O(rho^3), B3 = O(rho^2),
// B4 = eps/2 + O(rho^2).
ExtensionReport extension_fit(const std::vector<double>& rho,
                              const std::vector<std::array<double, 3>>& b134, double epsilon,
                              double b4_tol = 1e-4);

}  // namespace cymon
