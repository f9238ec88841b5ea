#include "cymon/special.hpp"

#include <cmath>
#include <stdexcept>

namespace cymon {

namespace {

// jets of the derivative of phi: phi' = -(l/4) r / (h^2 G)
Jet dirac_dphi(const RadialData& d, int l) {
    return (-0.25 * l) * (jet_var(d.r) * jet_inv(d.h2 * d.G));
}

}  // namespace

double dirac_higgs(const RadialH2& bg, int l, double m, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("dirac_higgs: rho must be positive");
    if (l == 0) return m;
    return m + l * bg.tail(rho);
}

InvariantConnection dirac_connection(const GeometryModel& model, int l, double C, double r) {
    const RadialData d = model.at(r);
    InvariantConnection c;
    c.l = l;
    c.r = r;
    c.a[0] = C * jet_inv(d.G * d.G);
    return c;
}

Jet dirac_higgs_jet(const GeometryModel& model, const RadialH2& bg, int l, double m,
                    double r) {
    const RadialData d = model.at(r);
    const Jet dphi = dirac_dphi(d, l);
    Jet phi;
    phi.c[0] = dirac_higgs(bg, l, m, model.rho_of_r(r));
    for (int i = 0; i < kJetOrder; ++i) phi.c[i + 1] = dphi.c[i];
    return phi;
}

DiracHarmonicity dirac_harmonicity(const GeometryModel& model, int l, double r) {
    const KahlerData kd = assemble_kahler_data(model, r);
    InvariantForm dphi = InvariantForm::scalar(1);
    dphi.add(kDrBit, dirac_dphi(kd.radial, l));
    const InvariantForm star = hodge_star(dphi, kd.metric);
    DiracHarmonicity out;
    for (const auto& [m, c] : star.terms) {
        (void)m;
        out.star_coeff = c[0].value();
    }
    const double scale = std::abs(out.star_coeff);
    out.residual = mc_derivative(star).max_abs() / (scale > 0.0 ? scale : 1.0);
    return out;
}

MonopoleResiduals dirac_residuals(const GeometryModel& model, const RadialH2& bg, int l,
                                  double C, double m, double r) {
    const KahlerData kd = assemble_kahler_data(model, r);
    const InvariantConnection c = dirac_connection(model, l, C, r);
    const HiggsField h{model.is_cone() ? Jet(m) : dirac_higgs_jet(model, bg, l, m, r)};
    return monopole_residuals(c, h, kd);
}

double dirac_connection_decay(const GeometryModel& model, double C, double r) {
    const RadialData d = model.at(r);
    const double a1 = std::abs(C / (d.G.value() * d.G.value()));
    const double g1 = d.Gdot.value() * 2.0 * d.Rplus.value() * d.Rminus.value() / d.r;
    return a1 / std::sqrt(g1);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need matched samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Rhs cone_hym_rhs(int s) {
    return [s](double rho, const std::vector<double>& y) -> std::vector<double> {
        const double B1 = y[0], B4 = y[1];
        const double r5 = rho * rho * rho * rho * rho;
        return {-s * 18.0 * B4 * B4, s * 1.5 / r5 * B1 * B4};
    };
}

ConeHymResult cone_hym_irreducible(double b1_0, double b4_0, double rho0, double rho_max,
                                   int sign_branch) {
    if (b4_0 == 0.0 && b1_0 == 0.0)
        throw std::invalid_argument("cone_hym_irreducible: trivial seed");
    ConeHymResult out;
    OdeOptions oo;
    oo.rtol = 1e-10;
    oo.atol = 1e-14;
    oo.h_init = 1e-4 * rho0;
    oo.stop = [](double, const std::vector<double>& y) {
        return std::abs(y[0]) > 1e8 || std::abs(y[1]) > 1e8;
    };
    try {
        out.traj = integrate(cone_hym_rhs(sign_branch), rho0, {b1_0, b4_0}, rho_max, oo);
        out.blow_up = out.traj.stopped;
    } catch (const OdeError&) {
        out.blow_up = true;
    }
    if (!out.traj.y.empty())
        out.b4_decays = std::abs(out.traj.y.back()[1]) < 0.1 * std::abs(b4_0);
    return out;
}

InvariantConnection hym_connection(const GeometryModel& model, double r) {
    const RadialData d = model.at(r);
    InvariantConnection c;
    c.l = 1;
    c.r = r;
    c.a[3] = (0.5 * model.epsilon()) * jet_inv(d.Rplus);
    return c;
}

InvariantForm hym_displayed_curvature(const RadialData& d) {
    const double eps = d.epsilon;
    InvariantForm F = InvariantForm::lie(2);
    F.add_t(theta_bit(2) | theta_bit(3), 0, Jet(-0.5));
    F.add_t(theta_bit(4) | theta_bit(5), 0,
            -0.5 * (d.Rminus * d.Rminus * jet_inv(d.Rplus * d.Rplus)));
    const Jet half_eps_rp = (0.5 * eps) * jet_inv(d.Rplus);
    F.add_t(theta_bit(1) | theta_bit(2), 1, half_eps_rp);
    F.add_t(theta_bit(1) | theta_bit(3), 2, half_eps_rp);
    const Jet dr_coeff =
        (-0.25 * eps) * (jet_var(d.r) * jet_inv(d.Rplus * d.Rplus * d.Rplus));
    F.add_t(kDrBit | theta_bit(4), 1, dr_coeff);
    F.add_t(kDrBit | theta_bit(5), 2, dr_coeff);
    return F;
}

double CurvatureComponents::max_abs() const {
    double m = 0.0;
    for (double v : I) m = std::max(m, std::abs(v));
    return m;
}

CurvatureComponents curvature_components(double rho, double B1, double dB1, double B3,
                                         double dB3, double B4, double dB4,
                                         const GeometryProfile& bg) {
    if (!(rho > 0.0)) throw std::domain_error("curvature_components: rho must be positive");
    const StenzelModel model(bg.epsilon());
    const RadialData d = model.at(bg.r_of_rho(rho));
    const double eps = bg.epsilon();
    const double G = d.G.value(), Gdot = d.Gdot.value();
    const double h2 = d.h2.value(), h = std::sqrt(h2);
    const double Rp = d.Rplus.value(), Rm = d.Rminus.value();
    const double r = d.r;
    const double root = std::sqrt(G / (Rp * Rm));

    CurvatureComponents out;
    out.I[0] = (dB1 - (2.0 * Gdot / r) * B1) / (eps * eps * h2);
    out.I[1] = (dB3 - (G / (r * Rm * Rm)) * B3) / (eps * h);
    out.I[2] = (dB4 - (G / (r * Rp * Rp)) * B4) / (eps * h);
    out.I[3] = (4.0 * B3 * B3 - Rm * Rm) / (eps * eps * h2);
    out.I[4] = (4.0 * B4 * B4 - Rp * Rp) / (eps * eps * h2);
    out.I[5] = (B4 / Rp - 2.0 * B1 * B3 / (G * G * Rm)) * root / Rp;
    out.I[6] = (B3 / Rm - 2.0 * B1 * B4 / (G * G * Rp)) * root / Rm;
    out.I[7] = (B1 / (G * G) - 2.0 * B3 * B4 / (Rp * Rm)) / G;
    return out;
}

namespace {

constexpr double kVanishingSentinel = 99.0;

double fit_exponent(const std::vector<double>& rho, const std::vector<double>& v,
                    double floor_abs) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    if (vmax < floor_abs) return kVanishingSentinel;
    return loglog_slope(rho, v);
}

}  // namespace

ExtensionReport extension_fit(const std::vector<double>& rho,
                              const std::vector<std::array<double, 3>>& b134, double epsilon,
                              double b4_tol) {
    if (rho.size() != b134.size() || rho.size() < 4)
        throw std::invalid_argument("extension_fit: need at least 4 matched samples");
    if (rho.back() / rho.front() < 4.0)
        throw std::invalid_argument("extension_fit: insufficient dynamic range");
    const size_t n = rho.size();
    std::vector<double> b1(n), b3(n), b4(n);
    for (size_t i = 0; i < n; ++i) {
        b1[i] = b134[i][0];
        b3[i] = b134[i][1];
        b4[i] = b134[i][2];
    }

    ExtensionReport rep;
    rep.b1_exponent = fit_exponent(rho, b1, 1e-12 * epsilon);
    rep.b3_exponent = fit_exponent(rho, b3, 1e-12 * epsilon);

    // least squares B4 = c0 + c2 rho^2
    {
        double s1 = n, sx = 0, sxx = 0, sy = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            const double x = rho[i] * rho[i];
            sx += x;
            sxx += x * x;
            sy += b4[i];
            sxy += x * b4[i];
        }
        const double det = s1 * sxx - sx * sx;
        rep.b4_at_zero = (sxx * sy - sx * sxy) / det;
        std::vector<double> resid(n);
        for (size_t i = 0; i < n; ++i) resid[i] = b4[i] - rep.b4_at_zero;
        rep.b4_exponent = fit_exponent(rho, resid, 1e-12 * epsilon);
    }

    const bool b1_ok = rep.b1_exponent >= 2.9;
    const bool b3_ok = rep.b3_exponent >= 1.9;
    const bool b4_ok = std::abs(rep.b4_at_zero - 0.5 * epsilon) <= b4_tol &&
                       (rep.b4_exponent >= 1.9);
    rep.extends = b1_ok && b3_ok && b4_ok;
    return rep;
}

}  // namespace cymon
