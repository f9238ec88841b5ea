#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cymon/fields.hpp"
#include "cymon/ode.hpp"
#include "cymon/profile.hpp"

using namespace cymon;

namespace {

std::mt19937_64 rng(987654);

Jet random_jet() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Jet j;
    for (auto& c : j.c) c = u(rng);
    return j;
}

// max over terms and components of the value slot only (the jets of a
// numerically solved profile carry no trustworthy higher derivatives)
double value_slot_max(const InvariantForm& f) {
    double m = 0.0;
    for (const auto& [mono, comps] : f.terms)
        for (const auto& j : comps) m = std::max(m, std::abs(j.value()));
    return m;
}

}  // namespace

TEST_CASE("engine curvature and covariant derivative match the closed forms, l = 1") {
    for (int trial = 0; trial < 20; ++trial) {
        InvariantConnection c;
        c.l = 1;
        c.r = 2.0;
        for (auto& a : c.a) a = random_jet();
        HiggsField h{random_jet()};

        const InvariantForm A = connection_form(c);
        const InvariantForm F_engine = curvature(A);
        const InvariantForm F_closed = closed_form_curvature(c);
        CHECK((F_engine - F_closed).max_abs() <= 1e-10);

        InvariantForm Phi = InvariantForm::lie(0);
        Phi.add_t(0, 0, h.phi);
        const InvariantForm D_engine = covariant_derivative(A, Phi);
        const InvariantForm D_closed = closed_form_covariant(c, h);
        CHECK((D_engine - D_closed).max_abs() <= 1e-10);
    }
}

TEST_CASE("three-term curvature formula for the abelian charges l != 1") {
    for (int l : {0, 2, -1, 5}) {
        InvariantConnection c;
        c.l = l;
        c.r = 1.7;
        c.a[0] = random_jet();  // only A1 survives off charge one
        const InvariantForm A = connection_form(c);
        CHECK((curvature(A) - closed_form_curvature(c)).max_abs() <= 1e-12);
    }
}

TEST_CASE("canonical connection curvature is the invariant 2-form of the charge") {
    for (int l : {1, 2, -3}) {
        const InvariantForm F = curvature(canonical_connection_form(l));
        InvariantForm want = InvariantForm::lie(2);
        want.add_t(theta_bit(2) | theta_bit(3), 0, Jet(-0.5 * l));
        want.add_t(theta_bit(4) | theta_bit(5), 0, Jet(-0.5 * l));
        CHECK((F - want).max_abs() <= 1e-14);
    }
}

TEST_CASE("Wang ansatz guards") {
    InvariantConnection c;
    c.l = 2;
    c.a[1] = Jet(0.3);
    CHECK_THROWS_AS(connection_form(c), FormError);

    const StenzelModel model(1.0);
    const KahlerData kd = assemble_kahler_data(model, 2.0);
    InvariantConnection ok;
    ok.l = 1;
    ok.r = 2.5;  // != kd.r
    CHECK_THROWS_AS(monopole_residuals(ok, HiggsField{Jet(0.1)}, kd),
                    std::invalid_argument);
}

TEST_CASE("project_11 splits into complex-structure eigenspaces") {
    const StenzelModel model(1.0);
    const KahlerData kd = assemble_kahler_data(model, 1.8);
    for (int trial = 0; trial < 10; ++trial) {
        InvariantConnection c;
        c.l = 1;
        c.r = kd.r;
        for (auto& a : c.a) a = random_jet();
        const InvariantForm F = curvature(connection_form(c));
        const auto [f20, f11] = project_11(F, kd);
        CHECK((f20 + f11 - F).max_abs() <= 1e-12);
        CHECK((apply_complex_structure(f11, kd.cs) - f11).max_abs() <= 1e-12);
        CHECK((apply_complex_structure(f20, kd.cs) + f20).max_abs() <= 1e-12);
    }
}

TEST_CASE("a shot reduced solution satisfies the monopole equations in the engine") {
    const double eps = 1.0;
    const GeometryProfile prof(eps);
    const StenzelModel model(eps);

    ShootOptions so;
    so.rho0 = 1e-4;
    const SolutionProfile traj = solve_reduced(-0.5, prof, so);

    for (double rho_want : {0.05, 0.3, 0.8, 2.0}) {
        // sample at an actual integration node, where the stored derivative is
        // the exact right-hand side rather than a Hermite interpolant
        size_t k = 0;
        while (k + 1 < traj.rho.size() && traj.rho[k] < rho_want) ++k;
        const double rho = traj.rho[k];
        const std::vector<double>& y = traj.y[k];
        const std::vector<double>& dy = traj.dy[k];
        const double r = prof.r_of_rho(rho);
        const RadialData d = model.at(r);
        const double drho_dr = r / (2.0 * d.G.value());

        // A4 = (eps/2) a / R+, with the r-derivative by the chain rule
        const double Rp = d.Rplus.value(), dRp = d.Rplus.c[1];
        InvariantConnection c;
        c.l = 1;
        c.r = r;
        c.a[3].c[0] = 0.5 * eps * y[0] / Rp;
        c.a[3].c[1] = 0.5 * eps * (dy[0] * drho_dr / Rp - y[0] * dRp / (Rp * Rp));
        HiggsField h;
        h.phi.c[0] = y[1];
        h.phi.c[1] = dy[1] * drho_dr;

        const KahlerData kd = assemble_kahler_data(model, r);
        const InvariantForm A = connection_form(c);
        const InvariantForm F = curvature(A);
        InvariantForm Phi = InvariantForm::lie(0);
        Phi.add_t(0, 0, h.phi);
        const InvariantForm dPhi = covariant_derivative(A, Phi);

        const InvariantForm w2 = wedge(kd.omega, kd.omega);
        const InvariantForm mix = wedge(dPhi, w2 * 0.5) + wedge(F, kd.Omega2);
        const InvariantForm lam = wedge(F, w2);
        const double scale = kd.metric.sqrt_det().value();

        CHECK(value_slot_max(mix) / scale <= 1e-8);
        CHECK(value_slot_max(lam) / scale <= 1e-8);
    }
}
