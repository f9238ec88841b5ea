#pragma once

// Invariant connections (Wang ansatz) and Higgs fields, their curvature and
// covariant derivative both through the exterior-algebra engine and through
// the closed formulas, and the Calabi-Yau monopole residuals.

#include "cymon/forms.hpp"
#include "cymon/geometry.hpp"

namespace cymon {

struct InvariantConnection {
    int l = 1;
    double r = 0.0;               // sample radius the jets are taken at
    std::array<Jet, 5> a{};       // A1..A5 (A2..A5 must vanish unless l = 1)
};

struct HiggsField {
    Jet phi;  // Phi = phi T1
};

// Full connection 1-form including the canonical -(l/2) theta^6 (x) T1 term.
InvariantForm connection_form(const InvariantConnection& c);
InvariantForm canonical_connection_form(int l);

// Lemma closed forms (three-term formula for l != 1, full display for l = 1).
InvariantForm closed_form_curvature(const InvariantConnection& c);
InvariantForm closed_form_covariant(const InvariantConnection& c, const HiggsField& phi);

struct MonopoleResiduals {
    double mix = 0.0;         // |nabla_A Phi ^ omega^2/2 + F ^ Omega2|, orthonormal scale
    double lambda = 0.0;      // |F ^ omega^2|, orthonormal scale
    double constraint = 0.0;  // |A2 A4 + A3 A5|
};

MonopoleResiduals monopole_residuals(const InvariantConnection& c, const HiggsField& phi,
                                     const KahlerData& kd);

// I-eigenspace split of a 2-form: returns {(2,0)+(0,2) part, (1,1) part}.
std::pair<InvariantForm, InvariantForm> project_11(const InvariantForm& F,
                                                   const KahlerData& kd);

}  // namespace cymon
