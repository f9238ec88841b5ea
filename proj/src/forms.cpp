#include "cymon/forms.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace cymon {

int mono_degree(Mono m) { return std::popcount(m); }

int merge_sign(Mono a, Mono b) {
    if (a & b) return 0;
    // For each generator of b, count how many generators of a sit above it.
    int swaps = 0;
    for (int j = 0; j < kGenerators; ++j) {
        if (!(b & (1u << j))) continue;
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

namespace {

// Basis X1..X6 as index pairs of C_{ij}, 1-based ambient so(4) indices.
constexpr int kPairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

int pair_index(int i, int j, double* sign) {
    // C_{ii} = 0; C_{ji} = -C_{ij}.
    if (i == j) return -1;
    *sign = 1.0;
    if (i > j) {
        std::swap(i, j);
        *sign = -1.0;
    }
    for (int k = 0; k < 6; ++k)
        if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
    return -1;
}

StructureConstants build_so4() {
    StructureConstants c{};
    auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    for (int p = 0; p < 6; ++p) {
        const int i = kPairs[p][0], j = kPairs[p][1];
        for (int q = 0; q < 6; ++q) {
            const int k = kPairs[q][0], l = kPairs[q][1];
            // [C_ij, C_kl] = d_jk C_il + d_il C_jk - d_ik C_jl - d_jl C_ik
            const double co[4] = {kron(j, k), kron(i, l), -kron(i, k), -kron(j, l)};
            const int ab[4][2] = {{i, l}, {j, k}, {j, l}, {i, k}};
            for (int m = 0; m < 4; ++m) {
                if (co[m] == 0.0) continue;
                double s = 0.0;
                const int idx = pair_index(ab[m][0], ab[m][1], &s);
                if (idx >= 0) c[p][q][idx] += co[m] * s;
            }
        }
    }
    return c;
}

}  // namespace

const StructureConstants& so4_structure() {
    static const StructureConstants c = build_so4();
    return c;
}

const std::array<std::array<std::array<double, 6>, 6>, 6>& dtheta_table() {
    // d theta^k (X_i, X_j) = -theta^k([X_i,X_j]) = -c^k_{ij}
    static const auto table = [] {
        std::array<std::array<std::array<double, 6>, 6>, 6> d{};
        const auto& c = so4_structure();
        for (int k = 0; k < 6; ++k)
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j) d[k][i][j] = -c[i][j][k];
        return d;
    }();
    return table;
}

std::array<Jet, 3> su2_bracket(const std::array<Jet, 3>& u, const std::array<Jet, 3>& v) {
    // [T_i,T_j] = 2 eps_{ijk} T_k, so [u,v] = 2 (u x v)
    std::array<Jet, 3> w;
    w[0] = (u[1] * v[2] - u[2] * v[1]) * 2.0;
    w[1] = (u[2] * v[0] - u[0] * v[2]) * 2.0;
    w[2] = (u[0] * v[1] - u[1] * v[0]) * 2.0;
    return w;
}

InvariantForm InvariantForm::scalar(int degree) {
    InvariantForm f;
    f.kind = CoeffKind::Scalar;
    f.degree = degree;
    return f;
}

InvariantForm InvariantForm::lie(int degree) {
    InvariantForm f;
    f.kind = CoeffKind::Lie;
    f.degree = degree;
    return f;
}

void InvariantForm::add(Mono m, const Jet& c) {
    if (kind != CoeffKind::Scalar) throw FormError("scalar term added to Lie-valued form");
    if (mono_degree(m) != degree) throw FormError("monomial degree mismatch");
    terms[m][0] += c;
}

void InvariantForm::add(Mono m, const std::array<Jet, 3>& c) {
    if (kind != CoeffKind::Lie) throw FormError("Lie term added to scalar form");
    if (mono_degree(m) != degree) throw FormError("monomial degree mismatch");
    auto& slot = terms[m];
    for (int i = 0; i < 3; ++i) slot[i] += c[i];
}

void InvariantForm::add_t(Mono m, int t_index, const Jet& c) {
    if (kind != CoeffKind::Lie) throw FormError("Lie term added to scalar form");
    if (mono_degree(m) != degree) throw FormError("monomial degree mismatch");
    terms[m][t_index] += c;
}

InvariantForm& InvariantForm::operator+=(const InvariantForm& o) {
    if (kind != o.kind || degree != o.degree)
        throw FormError("form addition kind/degree mismatch");
    for (const auto& [m, c] : o.terms) {
        auto& slot = terms[m];
        for (int i = 0; i < 3; ++i) slot[i] += c[i];
    }
    return *this;
}

InvariantForm& InvariantForm::operator-=(const InvariantForm& o) {
    if (kind != o.kind || degree != o.degree)
        throw FormError("form subtraction kind/degree mismatch");
    for (const auto& [m, c] : o.terms) {
        auto& slot = terms[m];
        for (int i = 0; i < 3; ++i) slot[i] -= c[i];
    }
    return *this;
}

InvariantForm& InvariantForm::operator*=(double s) {
    for (auto& [m, c] : terms)
        for (auto& j : c) j *= s;
    return *this;
}

void InvariantForm::prune(double tol) {
    for (auto it = terms.begin(); it != terms.end();) {
        double mx = 0.0;
        for (const auto& j : it->second)
            for (double v : j.c) mx = std::max(mx, std::abs(v));
        it = (mx <= tol) ? terms.erase(it) : std::next(it);
    }
}

bool InvariantForm::has_theta6() const {
    for (const auto& [m, c] : terms) {
        (void)c;
        if (m & theta_bit(6)) return true;
    }
    return false;
}

double InvariantForm::max_abs() const {
    double mx = 0.0;
    for (const auto& [m, c] : terms) {
        (void)m;
        const int n = (kind == CoeffKind::Lie) ? 3 : 1;
        for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(c[i].value()));
    }
    return mx;
}

InvariantForm operator+(InvariantForm a, const InvariantForm& b) { return a += b; }
InvariantForm operator-(InvariantForm a, const InvariantForm& b) { return a -= b; }
InvariantForm operator*(InvariantForm a, double s) { return a *= s; }
InvariantForm operator*(double s, InvariantForm a) { return a *= s; }

InvariantForm operator*(const Jet& s, InvariantForm a) {
    for (auto& [m, c] : a.terms) {
        (void)m;
        for (auto& j : c) j = s * j;
    }
    return a;
}

InvariantForm wedge(const InvariantForm& a, const InvariantForm& b) {
    if (a.kind == CoeffKind::Lie && b.kind == CoeffKind::Lie)
        throw FormError("wedge of two Lie-valued forms; use bracket_wedge");
    const bool lie = (a.kind == CoeffKind::Lie) || (b.kind == CoeffKind::Lie);
    InvariantForm r = lie ? InvariantForm::lie(a.degree + b.degree)
                          : InvariantForm::scalar(a.degree + b.degree);
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            const int s = merge_sign(ma, mb);
            if (s == 0) continue;
            auto& slot = r.terms[ma | mb];
            if (!lie) {
                slot[0] += static_cast<double>(s) * (ca[0] * cb[0]);
            } else if (a.kind == CoeffKind::Scalar) {
                for (int i = 0; i < 3; ++i) slot[i] += static_cast<double>(s) * (ca[0] * cb[i]);
            } else {
                for (int i = 0; i < 3; ++i) slot[i] += static_cast<double>(s) * (ca[i] * cb[0]);
            }
        }
    }
    r.prune();
    return r;
}

InvariantForm bracket_wedge(const InvariantForm& a, const InvariantForm& b) {
    if (a.kind != CoeffKind::Lie || b.kind != CoeffKind::Lie)
        throw FormError("bracket_wedge needs two Lie-valued forms");
    InvariantForm r = InvariantForm::lie(a.degree + b.degree);
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            const int s = merge_sign(ma, mb);
            if (s == 0) continue;
            auto br = su2_bracket(ca, cb);
            auto& slot = r.terms[ma | mb];
            for (int i = 0; i < 3; ++i) slot[i] += static_cast<double>(s) * br[i];
        }
    }
    r.prune();
    return r;
}

namespace {

Jet jet_shift(const Jet& a) {
    // d/dr of a coefficient jet; the top derivative is lost to truncation.
    Jet r;
    for (int i = 0; i < kJetOrder; ++i) r.c[i] = a.c[i + 1];
    return r;
}

}  // namespace

InvariantForm mc_derivative(const InvariantForm& a) {
    InvariantForm r = (a.kind == CoeffKind::Lie) ? InvariantForm::lie(a.degree + 1)
                                                 : InvariantForm::scalar(a.degree + 1);
    const auto& dth = dtheta_table();
    for (const auto& [m, c] : a.terms) {
        // Radial part: c' dr ^ theta^I
        if (!(m & kDrBit)) {
            auto& slot = r.terms[m | kDrBit];
            for (int i = 0; i < 3; ++i) slot[i] += jet_shift(c[i]);
        }
        // Maurer-Cartan part: Leibniz over the theta factors.
        for (int k = 1; k <= 6; ++k) {
            if (!(m & theta_bit(k))) continue;
            const Mono rest = m & ~theta_bit(k);
            // sign from moving d theta^k to the front of its slot
            const int pos = std::popcount(m & (theta_bit(k) - 1u));
            const double front = (pos % 2 == 0) ? 1.0 : -1.0;
            for (int i = 0; i < 6; ++i) {
                for (int j = i + 1; j < 6; ++j) {
                    const double coef = dth[k - 1][i][j];
                    if (coef == 0.0) continue;
                    const Mono mij = theta_bit(i + 1) | theta_bit(j + 1);
                    const int s = merge_sign(mij, rest);
                    if (s == 0) continue;
                    auto& slot = r.terms[mij | rest];
                    for (int t = 0; t < 3; ++t)
                        slot[t] += front * coef * static_cast<double>(s) * c[t];
                }
            }
        }
    }
    r.prune();
    return r;
}

InvariantForm curvature(const InvariantForm& A) {
    if (A.kind != CoeffKind::Lie) throw FormError("curvature of a non-Lie-valued form");
    if (A.degree != 1) throw FormError("curvature needs a 1-form");
    InvariantForm F = mc_derivative(A);
    F += 0.5 * bracket_wedge(A, A);
    F.prune(1e-300);
    return F;
}

InvariantForm covariant_derivative(const InvariantForm& A, const InvariantForm& Phi) {
    if (Phi.degree != 0) throw FormError("covariant_derivative needs a 0-form field");
    InvariantForm r = mc_derivative(Phi);
    r += bracket_wedge(A, Phi);
    r.prune(1e-300);
    return r;
}

Jet MetricCoeffs::sqrt_det() const {
    Jet p(1.0);
    for (const auto& gi : g) p = p * gi;
    return jet_sqrt(p);
}

InvariantForm hodge_star(const InvariantForm& a, const MetricCoeffs& g) {
    if (a.has_theta6()) throw FormError("hodge_star: theta^6 is not part of the 6-metric coframe");
    InvariantForm r = (a.kind == CoeffKind::Lie) ? InvariantForm::lie(6 - a.degree)
                                                 : InvariantForm::scalar(6 - a.degree);
    const Mono full = (1u << 6) - 1u;  // dr, theta^1..theta^5
    for (const auto& [m, c] : a.terms) {
        const Mono mc = full & ~m;
        const int s = merge_sign(m, mc);
        // ratio of orthonormal normalizations: prod_{i in mc} sqrt(g_i) / prod_{i in m} sqrt(g_i)
        Jet num(1.0), den(1.0);
        for (int i = 0; i < 6; ++i) {
            if (mc & (1u << i)) num = num * g.g[i];
            if (m & (1u << i)) den = den * g.g[i];
        }
        const Jet ratio = jet_sqrt(num / den);
        auto& slot = r.terms[mc];
        for (int i = 0; i < 3; ++i)
            slot[i] += kOrientationSign * static_cast<double>(s) * (ratio * c[i]);
    }
    r.prune();
    return r;
}

InvariantForm lambda_op(const InvariantForm& beta, const InvariantForm& omega,
                        const MetricCoeffs& g) {
    if (beta.degree != 2) throw FormError("lambda_op needs a degree-2 form");
    InvariantForm w2 = wedge(omega, omega) * 0.5;
    return hodge_star(wedge(beta, w2), g);
}

InvariantForm apply_complex_structure(const InvariantForm& a, const ComplexStructure& cs) {
    if (a.has_theta6()) throw FormError("complex structure undefined on theta^6");
    InvariantForm r = (a.kind == CoeffKind::Lie) ? InvariantForm::lie(a.degree)
                                                 : InvariantForm::scalar(a.degree);
    for (const auto& [m, c] : a.terms) {
        // I maps each generator to a single generator; push factors through in
        // ascending order, accumulating the reordering sign of the images.
        Mono img = 0;
        Jet factor(1.0);
        double sign = 1.0;
        bool dead = false;
        for (int i = 0; i < 6 && !dead; ++i) {
            if (!(m & (1u << i))) continue;
            const Mono tgt = 1u << cs.target[i];
            const int s = merge_sign(img, tgt);
            if (s == 0) {
                dead = true;
                break;
            }
            sign *= s;
            factor = factor * cs.coef[i];
            img |= tgt;
        }
        if (dead) continue;
        auto& slot = r.terms[img];
        for (int i = 0; i < 3; ++i) slot[i] += sign * (factor * c[i]);
    }
    r.prune();
    return r;
}

std::string dump(const InvariantForm& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms) {
        const int n = (a.kind == CoeffKind::Lie) ? 3 : 1;
        for (int t = 0; t < n; ++t) {
            if (c[t].value() == 0.0 && c[t].dvalue() == 0.0) continue;
            if (!first) os << " + ";
            first = false;
            os << c[t].value();
            if (m & kDrBit) os << " dr";
            for (int i = 1; i <= 6; ++i)
                if (m & theta_bit(i)) os << " th" << i;
            if (a.kind == CoeffKind::Lie) os << " (x) T" << (t + 1);
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace cymon
