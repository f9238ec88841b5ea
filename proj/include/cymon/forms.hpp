#pragma once

// Exterior algebra over the invariant coframe {dr, theta^1..theta^6} with
// jet-valued coefficients, either scalar or su(2)-valued. The Maurer-Cartan
// part of the exterior derivative is generated from the so(4) structure
// constants; the radial part comes from the coefficient jets.

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "cymon/jet.hpp"

namespace cymon {

struct FormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A monomial is a bitmask over the 7 coframe generators,
// bit 0 = dr, bits 1..6 = theta^1..theta^6, wedged in ascending bit order.
using Mono = unsigned;

inline constexpr int kGenerators = 7;
inline constexpr Mono kDrBit = 1u;
inline Mono theta_bit(int i) { return 1u << i; }  // i in 1..6

int mono_degree(Mono m);

// Sign of sorting the concatenation a,b into ascending order.
// Returns 0 when the monomials share a generator.
int merge_sign(Mono a, Mono b);

// [X_i,X_j] = sum_k c[i][j][k] X_k for so(4) in the basis
// X1=C12, X2=C13, X3=C14, X4=C23, X5=C24, X6=C34.
using StructureConstants = std::array<std::array<std::array<double, 6>, 6>, 6>;
const StructureConstants& so4_structure();

// d theta^k = sum_{i<j} dtheta[k][i][j] theta^i ^ theta^j  (k,i,j in 0..5 for
// theta^{k+1} etc). Derived once from so4_structure().
const std::array<std::array<std::array<double, 6>, 6>, 6>& dtheta_table();

enum class CoeffKind { Scalar, Lie };

// su(2) convention: [T_i,T_j] = 2 eps_{ijk} T_k.
std::array<Jet, 3> su2_bracket(const std::array<Jet, 3>& u, const std::array<Jet, 3>& v);

class InvariantForm {
  public:
    CoeffKind kind = CoeffKind::Scalar;
    int degree = 0;
    // Scalar forms use slot 0 only; Lie forms use all three slots (T1,T2,T3).
    std::map<Mono, std::array<Jet, 3>> terms;

    static InvariantForm scalar(int degree);
    static InvariantForm lie(int degree);

    void add(Mono m, const Jet& c);                      // scalar term
    void add(Mono m, const std::array<Jet, 3>& c);       // Lie term
    void add_t(Mono m, int t_index, const Jet& c);       // single su(2) slot

    InvariantForm& operator+=(const InvariantForm& o);
    InvariantForm& operator-=(const InvariantForm& o);
    InvariantForm& operator*=(double s);

    void prune(double tol = 0.0);
    bool has_theta6() const;
    // Largest |coefficient value| over all terms and slots.
    double max_abs() const;
};

InvariantForm operator+(InvariantForm a, const InvariantForm& b);
InvariantForm operator-(InvariantForm a, const InvariantForm& b);
InvariantForm operator*(InvariantForm a, double s);
InvariantForm operator*(double s, InvariantForm a);
InvariantForm operator*(const Jet& s, InvariantForm a);

// Graded product. Lie x Lie is rejected: use bracket_wedge for that.
InvariantForm wedge(const InvariantForm& a, const InvariantForm& b);

// [a ^ b] for Lie-valued forms: wedge on the form part, bracket on su(2).
InvariantForm bracket_wedge(const InvariantForm& a, const InvariantForm& b);

// d = (Maurer-Cartan part) + dr ^ (d/dr of coefficients).
InvariantForm mc_derivative(const InvariantForm& a);

// F = dA + (1/2)[A ^ A] for a Lie-valued 1-form.
InvariantForm curvature(const InvariantForm& A);

// nabla_A Phi = d Phi + [A, Phi] for a Lie-valued 0-form Phi.
InvariantForm covariant_derivative(const InvariantForm& A, const InvariantForm& Phi);

// Diagonal metric in the coframe: g = sum g[i] (basis^i)^2 with index
// 0 = dr, 1..5 = theta^1..theta^5 (theta^6 never appears on the 6-manifold).
struct MetricCoeffs {
    std::array<Jet, 6> g;
    Jet sqrt_det() const;
};

// Orientation: the volume form is kOrientationSign * e^0 ^ ... ^ e^5 in the
// orthonormal coframe e^i = sqrt(g_i) basis^i. The sign is fixed so that
// Lambda(omega) = +3 for the Kahler form at hand.
inline constexpr double kOrientationSign = -1.0;

InvariantForm hodge_star(const InvariantForm& a, const MetricCoeffs& g);

// Lambda(beta) = *(beta ^ omega^2/2), returned as a 0-form.
InvariantForm lambda_op(const InvariantForm& beta, const InvariantForm& omega,
                        const MetricCoeffs& g);

// Complex structure acting on the coframe: basis^i -> coef[i] * basis^{target[i]}.
struct ComplexStructure {
    std::array<int, 6> target{};
    std::array<Jet, 6> coef{};
};

// Multiplicative extension of I to forms of any degree built on dr,theta^1..5.
InvariantForm apply_complex_structure(const InvariantForm& a, const ComplexStructure& cs);

std::string dump(const InvariantForm& a);

}  // namespace cymon
