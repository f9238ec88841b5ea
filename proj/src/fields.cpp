#include "cymon/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace cymon {

namespace {

Jet jet_shift(const Jet& a) {
    Jet r;
    for (int i = 0; i < kJetOrder; ++i) r.c[i] = a.c[i + 1];
    return r;
}

Mono th(int i) { return theta_bit(i); }
Mono th(int i, int j) { return theta_bit(i) | theta_bit(j); }

}  // namespace

InvariantForm canonical_connection_form(int l) {
    InvariantForm A = InvariantForm::lie(1);
    A.add_t(th(6), 0, Jet(-0.5 * l));
    return A;
}

InvariantForm connection_form(const InvariantConnection& c) {
    if (c.l != 1) {
        for (int i = 1; i < 5; ++i)
            if (c.a[i].value() != 0.0)
                throw FormError("Wang ansatz: A2..A5 must vanish for l != 1");
    }
    InvariantForm A = canonical_connection_form(c.l);
    A.add_t(th(1), 0, c.a[0]);
    if (c.l == 1) {
        const Jet &a2 = c.a[1], &a3 = c.a[2], &a4 = c.a[3], &a5 = c.a[4];
        A.add_t(th(2), 1, a2);
        A.add_t(th(3), 1, -a3);
        A.add_t(th(4), 1, a4);
        A.add_t(th(5), 1, -a5);
        A.add_t(th(2), 2, a3);
        A.add_t(th(3), 2, a2);
        A.add_t(th(4), 2, a5);
        A.add_t(th(5), 2, a4);
    }
    return A;
}

InvariantForm closed_form_curvature(const InvariantConnection& c) {
    InvariantForm F = InvariantForm::lie(2);
    const Jet& a1 = c.a[0];
    if (c.l != 1) {
        F.add_t(th(2, 3), 0, Jet(-0.5 * c.l));
        F.add_t(th(4, 5), 0, Jet(-0.5 * c.l));
        F.add_t(kDrBit | th(1), 0, jet_shift(a1));
        F.add_t(th(2, 4), 0, a1);
        F.add_t(th(3, 5), 0, a1);
        return F;
    }
    const Jet &a2 = c.a[1], &a3 = c.a[2], &a4 = c.a[3], &a5 = c.a[4];
    F.add_t(th(2, 3), 0, 2.0 * (a2 * a2 + a3 * a3) - Jet(0.5));
    F.add_t(th(4, 5), 0, 2.0 * (a4 * a4 + a5 * a5) - Jet(0.5));
    const Jet mixed = 2.0 * (a2 * a4 + a5 * a3);
    F.add_t(th(2, 5), 0, mixed);
    F.add_t(th(3, 4), 0, -mixed);
    const Jet diag = a1 + 2.0 * (a2 * a5 - a4 * a3);
    F.add_t(th(2, 4), 0, diag);
    F.add_t(th(3, 5), 0, diag);
    const Jet c12 = a4 - 2.0 * (a1 * a3);
    F.add_t(th(1, 2), 1, c12);
    F.add_t(th(1, 3), 2, c12);
    const Jet c12b = a5 + 2.0 * (a1 * a2);
    F.add_t(th(1, 2), 2, c12b);
    F.add_t(th(1, 3), 1, -c12b);
    const Jet c14 = a2 + 2.0 * (a1 * a5);
    F.add_t(th(1, 4), 1, -c14);
    F.add_t(th(1, 5), 2, -c14);
    const Jet c14b = a3 - 2.0 * (a1 * a4);
    F.add_t(th(1, 4), 2, -c14b);
    F.add_t(th(1, 5), 1, c14b);
    // dr ^ d/dr (A - A_c)
    F.add_t(kDrBit | th(1), 0, jet_shift(a1));
    F.add_t(kDrBit | th(2), 1, jet_shift(a2));
    F.add_t(kDrBit | th(3), 1, -jet_shift(a3));
    F.add_t(kDrBit | th(4), 1, jet_shift(a4));
    F.add_t(kDrBit | th(5), 1, -jet_shift(a5));
    F.add_t(kDrBit | th(2), 2, jet_shift(a3));
    F.add_t(kDrBit | th(3), 2, jet_shift(a2));
    F.add_t(kDrBit | th(4), 2, jet_shift(a5));
    F.add_t(kDrBit | th(5), 2, jet_shift(a4));
    F.prune(1e-300);
    return F;
}

InvariantForm closed_form_covariant(const InvariantConnection& c, const HiggsField& h) {
    InvariantForm D = InvariantForm::lie(1);
    D.add_t(kDrBit, 0, jet_shift(h.phi));
    if (c.l == 1) {
        const Jet twophi = 2.0 * h.phi;
        const Jet &a2 = c.a[1], &a3 = c.a[2], &a4 = c.a[3], &a5 = c.a[4];
        D.add_t(th(3), 1, twophi * a2);
        D.add_t(th(2), 2, -(twophi * a2));
        D.add_t(th(2), 1, twophi * a3);
        D.add_t(th(3), 2, twophi * a3);
        D.add_t(th(4), 2, -(twophi * a4));
        D.add_t(th(5), 1, twophi * a4);
        D.add_t(th(4), 1, twophi * a5);
        D.add_t(th(5), 2, twophi * a5);
    }
    D.prune(1e-300);
    return D;
}

MonopoleResiduals monopole_residuals(const InvariantConnection& c, const HiggsField& h,
                                     const KahlerData& kd) {
    if (std::abs(c.r - kd.r) > 1e-12 * (1.0 + std::abs(kd.r)))
        throw std::invalid_argument("monopole_residuals: connection/geometry radius mismatch");
    const InvariantForm A = connection_form(c);
    const InvariantForm F = curvature(A);
    InvariantForm Phi = InvariantForm::lie(0);
    Phi.add_t(0, 0, h.phi);
    const InvariantForm dPhi = covariant_derivative(A, Phi);

    const InvariantForm w2 = wedge(kd.omega, kd.omega);
    const InvariantForm mix = wedge(dPhi, w2 * 0.5) + wedge(F, kd.Omega2);
    const InvariantForm lam = wedge(F, w2);

    const double scale = kd.metric.sqrt_det().value();
    MonopoleResiduals res;
    res.mix = mix.max_abs() / scale;
    res.lambda = lam.max_abs() / scale;
    res.constraint = std::abs(c.a[1].value() * c.a[3].value() +
                              c.a[2].value() * c.a[4].value());
    return res;
}

std::pair<InvariantForm, InvariantForm> project_11(const InvariantForm& F,
                                                   const KahlerData& kd) {
    if (F.degree != 2) throw FormError("project_11 needs a 2-form");
    const InvariantForm IF = apply_complex_structure(F, kd.cs);
    InvariantForm f11 = (F + IF) * 0.5;
    InvariantForm f20 = (F - IF) * 0.5;
    f11.prune(1e-300);
    f20.prune(1e-300);
    return {f20, f11};
}

}  // namespace cymon
