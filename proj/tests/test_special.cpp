#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cymon/special.hpp"

using namespace cymon;

TEST_CASE("Dirac Higgs field: exact limits and asymptotics") {
    const GeometryProfile prof(1.0);
    CHECK(dirac_higgs(prof, 0, 2.5, 1.0) == 2.5);  // l = 0 is the constant solution
    CHECK_THROWS_AS(dirac_higgs(prof, 1, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(dirac_higgs(prof, 1, 0.0, -1.0), std::domain_error);

    for (int l : {1, 2, -3}) {
        // large rho: (phi - m) rho^4 -> l / (8 c5)
        const double rho_far = 0.9 * prof.rho_max();
        const double c_fit = (dirac_higgs(prof, l, 0.7, rho_far) - 0.7) * std::pow(rho_far, 4);
        CHECK(c_fit == doctest::Approx(l / (8.0 * prof.c5())).epsilon(1e-2));

        // small rho: phi - m = (l/2)/rho + O(1)
        std::vector<double> rs, vs;
        for (int i = 0; i <= 12; ++i) {
            const double rho = 1e-4 * std::pow(10.0, double(i) / 12.0);
            rs.push_back(rho);
            vs.push_back(dirac_higgs(prof, l, 0.7, rho) - 0.7);
        }
        CHECK(loglog_slope(rs, vs) == doctest::Approx(-1.0).epsilon(1e-3));
        CHECK(vs.front() * rs.front() == doctest::Approx(0.5 * l).epsilon(1e-3));
    }
}

TEST_CASE("Dirac Higgs is harmonic and the monopole residuals vanish") {
    const StenzelModel model(1.0);
    const GeometryProfile prof(1.0);
    std::vector<double> star_over_l;
    for (int l : {1, 3}) {
        double coeff = 0.0;
        for (double r : {1.05, 1.6, 2.8, 5.5}) {
            const DiracHarmonicity dh = dirac_harmonicity(model, l, r);
            CHECK(dh.residual <= 1e-8);
            if (coeff == 0.0)
                coeff = dh.star_coeff;
            else  // *(d phi) is a constant multiple of theta^{12345}
                CHECK(dh.star_coeff == doctest::Approx(coeff).epsilon(1e-9));

            const MonopoleResiduals res = dirac_residuals(model, prof, l, 0.5, 1.0, r);
            CHECK(res.mix <= 1e-9);
            CHECK(res.lambda <= 1e-9);
        }
        star_over_l.push_back(coeff / l);
    }
    // the constant scales linearly in l
    CHECK(star_over_l[0] == doctest::Approx(star_over_l[1]).epsilon(1e-10));
}

TEST_CASE("cone monopoles: residuals and the rho^-5 connection decay") {
    const ConeModel model;
    const ConeH2 bg;
    const double C = 0.5;
    std::vector<double> rhos, decays;
    for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const MonopoleResiduals res = dirac_residuals(model, bg, 1, C, 1.0, r);
        CHECK(res.mix <= 1e-9);
        CHECK(res.lambda <= 1e-9);
        const double rho = model.rho_of_r(r);
        rhos.push_back(rho);
        decays.push_back(dirac_connection_decay(model, C, r));
        // closed form |A - A_c|_g = 27 C / (2 rho^5)
        CHECK(decays.back() ==
              doctest::Approx(27.0 * C / (2.0 * std::pow(rho, 5))).epsilon(1e-10));
    }
    CHECK(loglog_slope(rhos, decays) == doctest::Approx(-5.0).epsilon(1e-2));

    // C = 0 is the canonical connection: residuals vanish identically
    const MonopoleResiduals res0 = dirac_residuals(model, bg, 1, 0.0, 1.0, 2.0);
    CHECK(res0.mix <= 1e-14);
    CHECK(res0.lambda <= 1e-14);
}

TEST_CASE("loglog_slope recovers exact power laws") {
    std::vector<double> x, y;
    for (int i = 1; i <= 8; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 * std::pow(0.1 * i, -2.5));
    }
    CHECK(loglog_slope(x, y) == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("cone HYM system: mirror branches, degenerate family, residual") {
    CHECK_THROWS_AS(cone_hym_irreducible(0.0, 0.0, 1.0, 4.0), std::invalid_argument);

    // B4 = 0: both fields are constant in rho for either branch
    for (int s : {+1, -1}) {
        const ConeHymResult r = cone_hym_irreducible(0.7, 0.0, 1.0, 5.0, s);
        CHECK(!r.blow_up);
        CHECK(!r.b4_decays);
        CHECK(r.traj.y.back()[0] == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(r.traj.y.back()[1] == 0.0);
    }

    // the map (B1, B4) -> (-B1, B4) intertwines the two sign branches
    const ConeHymResult plus = cone_hym_irreducible(0.3, 0.2, 1.0, 6.0, +1);
    const ConeHymResult minus = cone_hym_irreducible(-0.3, 0.2, 1.0, 6.0, -1);
    REQUIRE(!plus.blow_up);
    REQUIRE(!minus.blow_up);
    for (double rho : {2.0, 4.0, 6.0}) {
        const auto a = plus.traj.eval(rho);
        const auto b = minus.traj.eval(rho);
        CHECK(a[0] == doctest::Approx(-b[0]).epsilon(1e-8));
        CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-8));
    }
    CHECK(resubstitution_residual(plus.traj, cone_hym_rhs(+1)) <= 1e-6);
}

TEST_CASE("irreducible HYM connection: engine curvature and monopole residuals") {
    for (double eps : {0.5, 1.0, 2.0}) {
        const StenzelModel model(eps);
        for (double r : {1.03 * eps, 1.5 * eps, 3.0 * eps, 6.0 * eps}) {
            const KahlerData kd = assemble_kahler_data(model, r);
            const InvariantConnection c = hym_connection(model, r);
            const InvariantForm F = curvature(connection_form(c));
            CHECK((F - hym_displayed_curvature(kd.radial)).max_abs() <= 1e-10);

            // HYM with vanishing Higgs: both monopole residuals vanish
            const MonopoleResiduals res = monopole_residuals(c, HiggsField{Jet(0.0)}, kd);
            CHECK(res.mix <= 1e-9);
            CHECK(res.lambda <= 1e-9);

            // curvature is of type (1,1)
            const auto [f20, f11] = project_11(F, kd);
            CHECK(f20.max_abs() <= 1e-12);
        }
    }
}

TEST_CASE("curvature components: HYM limit, bounded monopole, divergent B4 = 0 family") {
    const double eps = 1.0;
    const GeometryProfile prof(eps);
    const StenzelModel model(eps);

    // HYM profile in the B-variables: B1 = B3 = 0, B4 = eps R+/2... in fact
    // B4 = R+ A4 = eps/2 constant, so I5 -> -eps^{-4/3} on the zero section
    {
        std::vector<double> i5;
        for (double rho : {0.3, 0.1, 0.03, 0.01}) {
            const CurvatureComponents cc =
                curvature_components(rho, 0.0, 0.0, 0.0, 0.0, 0.5 * eps, 0.0, prof);
            i5.push_back(cc.I[4]);
        }
        CHECK(i5.back() == doctest::Approx(-std::pow(eps, -4.0 / 3.0)).epsilon(1e-3));
    }

    // a shot monopole stays bounded: B4 = (eps/2) a with the chain-rule slope
    {
        ShootOptions so;
        so.rho0 = 1e-4;
        const SolutionProfile traj = solve_reduced(-0.8, prof, so);
        double worst = 0.0;
        for (double rho : {0.01, 0.1, 0.5, 2.0, 8.0}) {
            const auto y = traj.eval(rho);
            const auto dy = traj.eval_deriv(rho);
            const CurvatureComponents cc = curvature_components(
                rho, 0.0, 0.0, 0.0, 0.0, 0.5 * eps * y[0], 0.5 * eps * dy[0], prof);
            worst = std::max(worst, cc.max_abs());
        }
        CHECK(worst <= 10.0);
    }

    // B4 identically zero: I5 = -R+^2/(eps^2 h^2) diverges like rho^-2
    {
        const double v_small = std::abs(curvature_components(0.1, 0.0, 0.0, 0.0, 0.0, 0.0,
                                                             0.0, prof)
                                            .I[4]);
        const double v_smaller = std::abs(curvature_components(0.01, 0.0, 0.0, 0.0, 0.0,
                                                               0.0, 0.0, prof)
                                              .I[4]);
        CHECK(v_smaller >= 50.0 * v_small);
        CHECK(v_smaller >= 1e3);
    }
    CHECK_THROWS_AS(curvature_components(0.0, 0, 0, 0, 0, 0, 0, prof), std::domain_error);
}

TEST_CASE("extension fit: shot monopoles extend, synthetic defects do not") {
    const double eps = 1.0;
    const GeometryProfile prof(eps);
    ShootOptions so;
    so.rho0 = 1e-4;
    const SolutionProfile traj = solve_reduced(-0.8, prof, so);

    std::vector<double> rho;
    std::vector<std::array<double, 3>> b134;
    for (int i = 0; i <= 16; ++i) {
        const double x = 1e-3 * std::pow(10.0, double(i) / 16.0);  // [1e-3, 1e-2]
        rho.push_back(x);
        b134.push_back({0.0, 0.0, 0.5 * eps * traj.eval(x)[0]});
    }
    const ExtensionReport good = extension_fit(rho, b134, eps);
    CHECK(good.extends);
    CHECK(good.b4_at_zero == doctest::Approx(0.5 * eps).epsilon(2e-4));
    CHECK(good.b1_exponent == 99.0);  // vanishing sentinel
    CHECK(good.b3_exponent == 99.0);
    CHECK(good.b4_exponent >= 1.9);

    // a B1 ~ rho^2 contamination violates the B1 = O(rho^3) threshold
    auto bad = b134;
    for (size_t i = 0; i < rho.size(); ++i) bad[i][0] = 1e-3 * rho[i] * rho[i];
    const ExtensionReport rep_bad = extension_fit(rho, bad, eps);
    CHECK(!rep_bad.extends);
    CHECK(rep_bad.b1_exponent == doctest::Approx(2.0).epsilon(1e-6));

    // guards
    CHECK_THROWS_AS(extension_fit({1e-3, 2e-3}, {{{0, 0, 0}}, {{0, 0, 0}}}, eps),
                    std::invalid_argument);
    std::vector<double> narrow = {1e-3, 1.1e-3, 1.2e-3, 1.3e-3};
    std::vector<std::array<double, 3>> nb(4, {0.0, 0.0, 0.5});
    CHECK_THROWS_AS(extension_fit(narrow, nb, eps), std::invalid_argument);
}

TEST_CASE("seeding B3 forces B1 ~ rho^2: the full system refuses to extend") {
    const double eps = 1.0;
    const GeometryProfile prof(eps);
    const Rhs f = full_rhs(prof);

    // gauge B2 = B5 = 0 seed with B3 = b3 rho0 != 0 near the zero section;
    // dB1/drho = 4 B4 B3 ~ 2 eps b3 rho, so B1 grows like rho^2
    const double rho0 = 1e-4, b3 = 0.05;
    const double alpha = -0.8;
    const double a0 = 1.0 + alpha * rho0 * rho0;
    const double phi0 = alpha * rho0;
    OdeOptions oo;
    oo.rtol = 1e-11;
    oo.atol = 1e-16;
    oo.h_init = 0.1 * rho0;
    const SolutionProfile traj =
        integrate(f, rho0, {phi0, 0.0, 0.0, b3 * rho0, 0.5 * eps * a0, 0.0}, 2e-2, oo);

    std::vector<double> rho;
    std::vector<std::array<double, 3>> b134;
    for (int i = 0; i <= 16; ++i) {
        const double x = 1e-3 * std::pow(10.0, double(i) / 16.0);
        const auto y = traj.eval(x);
        rho.push_back(x);
        b134.push_back({y[1], y[3], y[4]});
    }
    const ExtensionReport rep = extension_fit(rho, b134, eps);
    CHECK(!rep.extends);
    CHECK(rep.b1_exponent == doctest::Approx(2.0).epsilon(0.05));
}
