// cymon: construct the Stenzel Calabi-Yau background, solve the invariant
// monopole ODEs, and verify the closed-form solution families. Subcommands
// emit CSV profiles and JSON check reports; exit 0 iff all enabled checks
// pass, 1 on a failed check, 2 on a usage error.

#include <cstdlib>
#include <fstream>
#include <random>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cymon/bubbling.hpp"
#include "cymon/fields.hpp"
#include "cymon/forms.hpp"
#include "cymon/geometry.hpp"
#include "cymon/ode.hpp"
#include "cymon/profile.hpp"
#include "cymon/report.hpp"
#include "cymon/special.hpp"

using nlohmann::json;
using namespace cymon;

namespace {

int worker_count() {
    if (const char* env = std::getenv("CYMON_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
    const int w = std::min<size_t>(worker_count(), n);
    if (w <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mx;
    size_t next = 0;
    for (int t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (;;) {
                size_t i;
                {
                    std::lock_guard<std::mutex> lk(mx);
                    if (next >= n) return;
                    i = next++;
                }
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

std::vector<double> parse_grid(const std::string& s) {
    // "lo:hi:n" inclusive linear grid
    double lo, hi;
    int n;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2)
        throw CLI::ValidationError("grid", "expected lo:hi:n with n >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / (n - 1);
    return g;
}

std::pair<double, double> parse_interval(const std::string& s) {
    double lo, hi;
    char c;
    std::istringstream in(s);
    if (!(in >> lo >> c >> hi) || c != ':' || !(hi > lo))
        throw CLI::ValidationError("interval", "expected lo:hi with hi > lo");
    return {lo, hi};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw CLI::ValidationError("list", "expected comma-separated values");
    return out;
}

void emit(const ReportSink& sink, const std::string& out_path) {
    const std::string text = sink.to_json().dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        f << text << "\n";
    }
    if (!sink.all_pass()) {
        // repeat failures on stderr so batch logs show them without the file
        for (const auto& r : sink.records())
            if (!r.pass)
                std::cerr << "FAIL " << r.check << " value=" << r.value
                          << " tol=" << r.tolerance << "\n";
    }
}

// ---------- check suites (shared between `verify` and the family commands) ---

void suite_mc(ReportSink& sink) {
    // the five quoted relations plus the derived one, straight off the tables
    const auto& dt = dtheta_table();
    auto coeff = [&](int k, int i, int j) { return dt[k - 1][i - 1][j - 1]; };
    struct Rel {
        int k;
        std::array<std::array<int, 3>, 2> rhs;  // {i, j, sign}
    };
    const std::vector<Rel> rels = {
        {1, {{{2, 4, 1}, {3, 5, 1}}}},  {2, {{{1, 4, -1}, {3, 6, 1}}}},
        {3, {{{1, 5, -1}, {2, 6, -1}}}}, {4, {{{1, 2, 1}, {5, 6, 1}}}},
        {5, {{{1, 3, 1}, {4, 6, -1}}}},  {6, {{{2, 3, 1}, {4, 5, 1}}}}};
    double worst = 0.0;
    for (const auto& rel : rels) {
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j) {
                double expect = 0.0;
                for (const auto& t : rel.rhs)
                    if (t[0] == i && t[1] == j) expect = t[2];
                worst = std::max(worst, std::abs(coeff(rel.k, i, j) - expect));
            }
    }
    sink.check_le("mc.relations", json::object(), worst, 0.0);

    // d^2 = 0 on random scalar forms with jet coefficients
    std::mt19937_64 rng(20260823);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double d2 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int deg = 1 + trial % 4;
        InvariantForm f = InvariantForm::scalar(deg);
        for (int t = 0; t < 5; ++t) {
            Mono m = 0;
            int bits = 0;
            while (bits < deg) {
                const Mono b = 1u << (rng() % 7);
                if (!(m & b)) {
                    m |= b;
                    ++bits;
                }
            }
            Jet c;
            for (auto& x : c.c) x = u(rng);
            f.add(m, c);
        }
        d2 = std::max(d2, mc_derivative(mc_derivative(f)).max_abs());
    }
    sink.check_le("mc.d_squared", {{"trials", 100}}, d2, 1e-12);
}

void suite_volume(ReportSink& sink, const std::vector<double>& epsilons) {
    for (double eps : epsilons) {
        const StenzelModel model(eps);
        double ma = 0.0, vol = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double r = eps * (1.001 + 4.0 * double(i) / 49.0);
            ma = std::max(ma, monge_ampere_residual(model, r));
            const KahlerData kd = assemble_kahler_data(model, r);
            const InvariantForm w3 =
                wedge(wedge(kd.omega, kd.omega), kd.omega) * (1.0 / 6.0);
            const InvariantForm i8 = wedge(kd.Omega1, kd.Omega2) * 0.25;
            const InvariantForm resid = w3 + i8;
            vol = std::max(vol, resid.max_abs() / w3.max_abs());
        }
        sink.check_le("geometry.monge_ampere", {{"epsilon", eps}}, ma, 1e-7);
        sink.check_le("geometry.volume_identity", {{"epsilon", eps}}, vol, 1e-9);
    }
}

void suite_hym(ReportSink& sink, double eps) {
    const StenzelModel model(eps);
    double engine_vs_display = 0.0, lam = 0.0, f20 = 0.0, mix = 0.0, theta45 = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double r = eps * (1.01 + 6.0 * double(i) / 19.0);
        const KahlerData kd = assemble_kahler_data(model, r);
        const InvariantConnection c = hym_connection(model, r);
        const InvariantForm F = curvature(connection_form(c));
        const InvariantForm disp = hym_displayed_curvature(kd.radial);
        engine_vs_display = std::max(engine_vs_display, (F - disp).max_abs());
        const MonopoleResiduals res = monopole_residuals(c, HiggsField{Jet(0.0)}, kd);
        lam = std::max(lam, res.lambda);
        mix = std::max(mix, res.mix);
        f20 = std::max(f20, project_11(F, kd).first.max_abs());
        const double rp = kd.radial.Rplus.value(), rm = kd.radial.Rminus.value();
        const auto it = disp.terms.find(theta_bit(4) | theta_bit(5));
        theta45 = std::max(theta45, std::abs(it->second[0].value() +
                                             rm * rm / (2.0 * rp * rp)));
    }
    sink.check_le("hym.engine_vs_display", {{"epsilon", eps}, {"radii", 20}},
                  engine_vs_display, 1e-10);
    sink.check_le("hym.lambda_F", {{"epsilon", eps}}, lam, 1e-9);
    sink.check_le("hym.f20_part", {{"epsilon", eps}}, f20, 1e-9);
    sink.check_le("hym.monopole_mix", {{"epsilon", eps}}, mix, 1e-9);
    sink.check_le("hym.theta45_coefficient", {{"epsilon", eps}}, theta45, 1e-12);

    // |A - A_c| -> 0 at large rho, and the theta^45 coefficient -> 0 at r -> eps
    const double near = std::abs(hym_displayed_curvature(model.at(eps * 1.0000001))
                                     .terms.at(theta_bit(4) | theta_bit(5))[0]
                                     .value());
    sink.check_le("hym.theta45_vanishes_at_zero_section", {{"epsilon", eps}}, near, 1e-5);
    const RadialData far = model.at(40.0 * eps);
    const double decay = 0.5 * eps / far.Rplus.value() *
                         std::sqrt(1.0 / (far.G.value() * far.Rplus.value() /
                                          far.Rminus.value()));
    sink.check_le("hym.connection_decay_at_infinity", {{"epsilon", eps}}, decay, 1e-2);
}

void suite_dirac(ReportSink& sink, double eps, int l, double m, double C) {
    const StenzelModel model(eps);
    const GeometryProfile prof(eps);
    double harm = 0.0, mixr = 0.0, lamr = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double r = eps * (1.02 + 5.0 * double(i) / 9.0);
        harm = std::max(harm, dirac_harmonicity(model, l, r).residual);
        const MonopoleResiduals res = dirac_residuals(model, prof, l, C, m, r);
        mixr = std::max(mixr, res.mix);
        lamr = std::max(lamr, res.lambda);
    }
    const json params = {{"epsilon", eps}, {"l", l}, {"m", m}, {"C", C}};
    sink.check_le("dirac.harmonicity", params, harm, 1e-8);
    sink.check_le("dirac.monopole_mix", params, mixr, 1e-9);
    sink.check_le("dirac.lambda_F", params, lamr, 1e-9);

    if (l != 0) {
        // large-rho tail: (phi - m) rho^4 -> l / (8 c5)
        const double rho_far = 0.9 * prof.rho_max();
        const double c_fit = (dirac_higgs(prof, l, m, rho_far) - m) *
                             std::pow(rho_far, 4);
        const double c_expect = l / (8.0 * prof.c5());
        sink.check_le("dirac.tail_rho4_coefficient", params,
                      std::abs(c_fit / c_expect - 1.0), 1e-2);

        // small-rho leading singularity: exponent -1, coefficient l/2
        std::vector<double> rs, vs;
        const double rho_a = 1e-4 * std::pow(eps, 2.0 / 3.0);
        for (int i = 0; i <= 12; ++i) {
            const double rho = rho_a * std::pow(10.0, double(i) / 12.0);
            rs.push_back(rho);
            vs.push_back(dirac_higgs(prof, l, m, rho) - m);
        }
        sink.check_le("dirac.small_rho_exponent", params,
                      std::abs(loglog_slope(rs, vs) + 1.0), 1e-3);
        sink.check_le("dirac.small_rho_coefficient", params,
                      std::abs(vs.front() * rs.front() / (0.5 * l) - 1.0), 1e-3);
    } else {
        const double rho_mid = 0.5 * prof.rho_max();
        sink.check_le("dirac.l0_constant", params,
                      std::abs(dirac_higgs(prof, 0, m, rho_mid) - m), 0.0);
    }
}

void suite_cone(ReportSink& sink, int l, double C, double m) {
    const ConeModel model;
    const ConeH2 bg;
    double mixr = 0.0, lamr = 0.0;
    std::vector<double> rhos, decays;
    for (int i = 0; i < 10; ++i) {
        const double r = 1.0 + 9.0 * double(i) / 9.0 * 3.0;
        const MonopoleResiduals res = dirac_residuals(model, bg, l, C, m, r);
        mixr = std::max(mixr, res.mix);
        lamr = std::max(lamr, res.lambda);
        rhos.push_back(model.rho_of_r(r));
        decays.push_back(dirac_connection_decay(model, C, r));
    }
    const json params = {{"l", l}, {"C", C}, {"m", m}};
    sink.check_le("cone.monopole_mix", params, mixr, 1e-9);
    sink.check_le("cone.lambda_F", params, lamr, 1e-9);
    if (C != 0.0)
        sink.check_le("cone.decay_exponent", params,
                      std::abs(loglog_slope(rhos, decays) + 5.0), 1e-2);

    // C = 0: canonical connection, Lambda F = 0
    double lam0 = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double r = 1.0 + double(i);
        lam0 = std::max(lam0, dirac_residuals(model, bg, l, 0.0, m, r).lambda);
    }
    sink.check_le("cone.canonical_lambda_F", {{"l", l}}, lam0, 1e-9);
}

void suite_bubble(ReportSink& sink, const std::vector<double>& lambdas, double R,
                  double rho1, double rho2, double eps,
                  std::vector<std::vector<double>>* csv_rows) {
    const GeometryProfile prof(eps, 24.0);
    std::vector<BubbleRow> rows(lambdas.size());
    parallel_for(lambdas.size(), [&](size_t i) {
        rows[i] = bubble_row(lambdas[i], R, rho1, rho2, prof);
    });
    bool bps_dec = true, dirac_dec = true, loc_dec = true;
    for (size_t i = 1; i < rows.size(); ++i) {
        bps_dec = bps_dec && rows[i].bps_error < rows[i - 1].bps_error;
        dirac_dec = dirac_dec && rows[i].dirac_error < rows[i - 1].dirac_error;
        loc_dec = loc_dec && rows[i].a_at_inner < rows[i - 1].a_at_inner;
    }
    json params = {{"lambdas", lambdas}, {"R", R}, {"annulus", {rho1, rho2}},
                   {"epsilon", eps}};
    sink.check_that("bubble.bps_error_decreasing", params, rows.back().bps_error, 0.0,
                    bps_dec);
    sink.check_that("bubble.dirac_error_decreasing", params, rows.back().dirac_error, 0.0,
                    dirac_dec);
    sink.check_that("bubble.localization_decreasing", params, rows.back().a_at_inner, 0.0,
                    loc_dec);
    sink.check_le("bubble.flat_scale_covariance", {{"mu", 1.0}, {"eta", 0.5}},
                  flat_scale_covariance_error(1.0, 0.5), 1e-7);
    if (csv_rows) {
        for (const auto& r : rows)
            csv_rows->push_back({r.lambda, r.mass, r.eta, r.bps_error, r.dirac_error,
                                 r.dirac_deriv_error, r.a_at_inner, r.eta_best,
                                 r.bps_error_best});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant Calabi-Yau monopoles on the Stenzel geometry"};
    app.require_subcommand(1);

    // ---- geometry ----
    auto* geo = app.add_subcommand("geometry", "Tabulate the radial background");
    double g_eps = 0.0, g_tmax = 20.0;
    int g_nlog = 220, g_nlin = 2200;
    std::string g_out = "geometry.csv";
    geo->add_option("--epsilon", g_eps, "deformation parameter")->required();
    geo->add_option("--t-max", g_tmax);
    geo->add_option("--n-log", g_nlog);
    geo->add_option("--n-lin", g_nlin);
    geo->add_option("--out", g_out, "CSV path");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "Run a verification family");
    std::string v_family = "all", v_out;
    double v_eps = 1.0;
    ver->add_option("--family", v_family)
        ->check(CLI::IsMember({"mc", "volume", "hym", "dirac", "cone", "all"}));
    ver->add_option("--epsilon", v_eps);
    ver->add_option("--out", v_out, "JSON report path (default stdout)");

    // ---- shoot ----
    auto* sh = app.add_subcommand("shoot", "Integrate one monopole profile");
    double s_eps = 0.0, s_alpha = 0.0, s_mass = 0.0, s_rho0 = 1e-3, s_rhomax = 0.0,
           s_rtol = 1e-11;
    bool s_have_alpha = false, s_have_mass = false;
    std::string s_out;
    sh->add_option("--epsilon", s_eps)->required();
    auto* oa = sh->add_option("--alpha", s_alpha, "shooting parameter (negative)");
    auto* om = sh->add_option("--mass", s_mass, "target |mass|, solved by bisection");
    sh->add_option("--rho0", s_rho0);
    sh->add_option("--rho-max", s_rhomax);
    sh->add_option("--rtol", s_rtol);
    sh->add_option("--out", s_out);
    oa->excludes(om);

    // ---- moduli ----
    auto* mo = app.add_subcommand("moduli", "Sweep the shooting parameter");
    double m_eps = 0.0;
    std::string m_grid = "-5:-0.1:20", m_out = "moduli.csv";
    double m_rho0 = 1e-3;
    mo->add_option("--epsilon", m_eps)->required();
    mo->add_option("--alpha-grid", m_grid, "lo:hi:n");
    mo->add_option("--rho0", m_rho0);
    mo->add_option("--out", m_out);

    // ---- dirac ----
    auto* di = app.add_subcommand("dirac", "Dirac monopole checks");
    double d_eps = 0.0, d_m = 1.0, d_C = 0.5;
    int d_l = 1;
    std::string d_out;
    di->add_option("--epsilon", d_eps)->required();
    di->add_option("--l", d_l);
    di->add_option("--m", d_m);
    di->add_option("--C", d_C);
    di->add_option("--out", d_out);

    // ---- cone ----
    auto* co = app.add_subcommand("cone", "Cone monopole checks");
    double c_C = 0.5, c_m = 1.0;
    int c_l = 1;
    std::string c_out;
    co->add_option("--l", c_l);
    co->add_option("--C", c_C);
    co->add_option("--m", c_m);
    co->add_option("--out", c_out);

    // ---- hym ----
    auto* hy = app.add_subcommand("hym", "Irreducible HYM connection checks");
    double h_eps = 0.0;
    std::string h_out;
    hy->add_option("--epsilon", h_eps)->required();
    hy->add_option("--out", h_out);

    // ---- bubble ----
    auto* bu = app.add_subcommand("bubble", "Large-mass bubbling study");
    double b_eps = 0.0, b_R = 3.0;
    std::string b_lambdas = "2,4,8,16", b_annulus = "1:3", b_out = "bubble.csv",
                b_report;
    bu->add_option("--epsilon", b_eps)->required();
    bu->add_option("--lambdas", b_lambdas);
    bu->add_option("--R", b_R);
    bu->add_option("--annulus", b_annulus);
    bu->add_option("--out", b_out, "CSV path");
    bu->add_option("--report", b_report, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (geo->parsed()) {
            const GeometryProfile prof(g_eps, g_tmax, g_nlog, g_nlin);
            std::vector<std::vector<double>> rows;
            for (const RadialPoint& p : prof.points()) {
                if (p.t == 0.0) continue;  // Gdot is singular at the zero section
                rows.push_back(
                    {p.r, p.t, p.rho, p.Fprime, p.G, p.Gdot, p.h2, p.Rplus, p.Rminus});
            }
            write_csv(g_out,
                      {"r", "t", "rho", "Fprime", "G", "Gdot", "h2", "Rplus", "Rminus"},
                      rows);
            return 0;
        }

        if (ver->parsed()) {
            ReportSink sink;
            if (v_family == "mc" || v_family == "all") suite_mc(sink);
            if (v_family == "volume" || v_family == "all")
                suite_volume(sink, {0.5, 1.0, 2.0});
            if (v_family == "hym" || v_family == "all") suite_hym(sink, v_eps);
            if (v_family == "dirac" || v_family == "all")
                suite_dirac(sink, v_eps, 1, 1.0, 0.5);
            if (v_family == "cone" || v_family == "all") suite_cone(sink, 1, 0.5, 1.0);
            emit(sink, v_out);
            return sink.all_pass() ? 0 : 1;
        }

        if (sh->parsed()) {
            s_have_alpha = oa->count() > 0;
            s_have_mass = om->count() > 0;
            if (!s_have_alpha && !s_have_mass)
                throw CLI::RequiredError("--alpha or --mass");
            const GeometryProfile prof(s_eps);
            ShootOptions opt;
            opt.rho0 = s_rho0;
            opt.rho_max = s_rhomax;
            opt.rtol = s_rtol;
            ShootResult res;
            if (s_have_alpha)
                res = mass_of_alpha(s_alpha, prof, opt);
            else
                res = shoot_for_mass(s_mass, prof, opt);
            const SolutionProfile traj = solve_reduced(res.alpha, prof, opt);
            res.drift = resubstitution_residual(traj, reduced_rhs(prof));
            const json out = {{"alpha", res.alpha},          {"mass", res.mass},
                              {"mass_magnitude", std::abs(res.mass)},
                              {"tail", res.tail},            {"drift", res.drift},
                              {"steps", res.steps},          {"rho0", opt.rho0},
                              {"rtol", opt.rtol}};
            if (s_out.empty())
                std::cout << out.dump(2) << "\n";
            else
                std::ofstream(s_out) << out.dump(2) << "\n";
            return 0;
        }

        if (mo->parsed()) {
            const std::vector<double> grid = parse_grid(m_grid);
            const GeometryProfile prof(m_eps);
            ShootOptions opt;
            opt.rho0 = m_rho0;
            std::vector<std::vector<double>> rows(grid.size());
            parallel_for(grid.size(), [&](size_t i) {
                const ShootResult r = mass_of_alpha(grid[i], prof, opt);
                rows[i] = {r.alpha, r.mass, r.tail, r.drift, double(r.steps)};
            });
            write_csv(m_out, {"alpha", "mass", "tail", "drift", "steps"}, rows);
            ReportSink sink;
            bool monotone = true;
            for (size_t i = 1; i < rows.size(); ++i)
                monotone = monotone && ((grid[1] > grid[0]) == (rows[i][1] > rows[i - 1][1]));
            sink.check_that("moduli.mass_monotone",
                            {{"epsilon", m_eps}, {"grid", m_grid}}, 0.0, 0.0, monotone);
            emit(sink, "");
            return sink.all_pass() ? 0 : 1;
        }

        if (di->parsed()) {
            ReportSink sink;
            suite_dirac(sink, d_eps, d_l, d_m, d_C);
            emit(sink, d_out);
            return sink.all_pass() ? 0 : 1;
        }

        if (co->parsed()) {
            if (c_m == 0.0) {
                std::cerr << "cone: --m must be nonzero (|Phi| is a nonzero constant)\n";
                return 2;
            }
            ReportSink sink;
            suite_cone(sink, c_l, c_C, c_m);
            emit(sink, c_out);
            return sink.all_pass() ? 0 : 1;
        }

        if (hy->parsed()) {
            ReportSink sink;
            suite_hym(sink, h_eps);
            emit(sink, h_out);
            return sink.all_pass() ? 0 : 1;
        }

        if (bu->parsed()) {
            const std::vector<double> lambdas = parse_list(b_lambdas);
            const auto [rho1, rho2] = parse_interval(b_annulus);
            ReportSink sink;
            std::vector<std::vector<double>> rows;
            suite_bubble(sink, lambdas, b_R, rho1, rho2, b_eps, &rows);
            write_csv(b_out,
                      {"lambda", "mass", "eta", "bps_error", "dirac_error",
                       "dirac_deriv_error", "a_at_inner", "eta_best", "bps_error_best"},
                      rows);
            emit(sink, b_report);
            return sink.all_pass() ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
