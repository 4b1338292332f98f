#pragma once

// Finite dimensional representations of sl(n) and their loop extensions,
// classical r-matrices (standard, trigonometric, twisted, esoteric), the
// classical Yang-Baxter residual and the numeric classical limit of the
// universal R-matrix in a representation.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgf/deformations.hpp"

namespace qgf {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// e_ij in an n x n matrix, 1-based like the unit matrices of sl(n).
CMatrix unit_matrix(int n, int i, int j);
CMatrix kron(const CMatrix& a, const CMatrix& b);
// P r P for r acting on V (x) V with dim V = n.
CMatrix flip_tensor(const CMatrix& r, int n);
// r on slots (i, j) of V (x) V (x) V, 0-based, i < j.
CMatrix embed_tensor(const CMatrix& r, int n, int i, int j);

struct Representation {
    std::string name;
    int dim = 0;
    // Chevalley generators of the finite algebra.
    std::vector<CMatrix> e, f, h;
    // Root vectors E_i, E_{-i} with tr(E_i E_{-j}) = delta_ij, and root heights.
    std::vector<CMatrix> pos, neg;
    std::vector<int> height;
};

// Fundamental representation of sl(n) with root vectors the unit matrices.
Representation sl_fundamental(int n);

// Largest entry of the Chevalley-Serre relation residuals.
double representation_residual(const Representation& rep);
// [e_{-g}, E_{-i}] = c E_{-j} implies [E_j, e_{-g}] = c E_i. Throws
// NormalizationInconsistent.
void check_root_normalization(const Representation& rep);

// Invariant element of the trace form and its Cartan part.
CMatrix casimir(const Representation& rep);
CMatrix casimir_cartan(const Representation& rep);

enum class Family { Standard, Trigonometric, Twisted, Esoteric, EllipticSeries };
const char* family_name(Family f);

enum class Threading { Multiplicative, Additive };

struct ClassicalR {
    Family family = Family::Standard;
    std::string name;
    int n = 0; // dimension of V
    Threading threading = Threading::Multiplicative;
    std::function<CMatrix(cplx)> at;
};

// r = phi + sum E_{-i} (x) E_i with phi = half the Cartan part of the
// Casimir plus an optional antisymmetric Cartan piece.
CMatrix standard_r_matrix(const Representation& rep,
                          const std::optional<CMatrix>& phi_antisym = std::nullopt);
ClassicalR standard_r(const Representation& rep,
                      const std::optional<CMatrix>& phi_antisym = std::nullopt);

// phi + sum E_{-i} (x) E_i + x/(1-x) C. Throws PoleAtPoint at x = 1.
CMatrix trig_r(const Representation& rep, cplx x,
               const std::optional<CMatrix>& phi_antisym = std::nullopt);
ClassicalR trig_family(const Representation& rep,
                       const std::optional<CMatrix>& phi_antisym = std::nullopt);

// Order two grading of sl(3) by theta(X) = -J X^t J, J = antidiag(1, -1, 1).
struct Grading {
    int k = 2;
    std::function<CMatrix(const CMatrix&)> theta;
};
Grading sl3_diagram_grading();
// Projections C_j of the Casimir onto g (x) g_j.
std::vector<CMatrix> graded_casimir(const Representation& rep, const Grading& g);
// phi_0 + sum F_i (x) E_i - C_0 + (C_0 + x C_1)/(1 - x^2). Throws
// GradingInvalid unless rep is sl(3) fundamental with k = 2, PoleAtPoint at x^2 = 1.
CMatrix twisted_r(const Representation& rep, int k, cplx x);
ClassicalR twisted_family(const Representation& rep, int k);

// Esoteric deformation of the sl(N) loop r-matrix in the principal picture,
// nodes 0..N-1 with e_0 = e_{N1}, spectral variable z (z^N = lambda/mu).
// Cartan part solving phi(s,.) + phi(., tau s) = 0 for s in the domain, with
// the symmetric part fixed by the Casimir. Throws PairNotAdmissible when the
// conditions are inconsistent.
CMatrix esoteric_phi(int N, const TauMap& tau);
// sum_m sum_i eps^{m h_i} z^{-h_i} E_i (x) tau^m(E_{-i}) over a dual basis of
// the subalgebra generated by the domain.
CMatrix esoteric_deformation(int N, const TauMap& tau, cplx eps, cplx z);
// Undeformed r in the principal picture with the Cartan part above.
CMatrix esoteric_base(int N, const TauMap& tau, cplx z);
// r - d(z) + flip(d(1/z)). Throws CyclicTauNotAllowedHere.
ClassicalR esoteric_r(int N, const TauMap& tau, cplx eps);
// tau e_i = e_{i+1} for i = 1..N-1 with e_N = e_0.
TauMap esoteric_shift(int N);

// Max Frobenius norm of [r12, r13 + r23] + [r13, r23] over the points, with
// spectral arguments (x, xy, y) or (u, u+v, v).
double cybe_residual(const ClassicalR& r, const std::vector<std::pair<cplx, cplx>>& points);
// Seeded spectral points away from the unit-ratio and small-modulus loci.
std::vector<std::pair<cplx, cplx>> spectral_points(uint64_t seed, int count, Threading th,
                                                   int pole_order = 1);

// ---------------------------------------------------------------------------
// Classical limit

struct LimitReport {
    std::vector<double> hbar;
    std::vector<double> error;  // || (R(hbar) - 1)/hbar - r ||
    std::vector<double> ratio;  // error[i] / error[i+1]
    CMatrix extracted;          // at the last hbar
};
// Throws InvalidInput for hbar = 0.
LimitReport classical_limit(const std::function<CMatrix(double)>& R_of_hbar,
                            const CMatrix& target, const std::vector<double>& hbars);

// Generators of a quantum algebra acting on a weight basis. weights[i] are
// root coordinates of basis vector i.
struct QuantumRep {
    int dim = 0;
    std::vector<CMatrix> plus, minus;
    std::vector<std::vector<double>> weights;
};

// R = exp(phi(wt, wt)) sum t e_{-a} (x) e_{a'} in rep1 (x) rep2 through the
// given grade, with x_ab = exp(phi[a][b]). The t coefficients come from the
// pairing matrices evaluated in MPFR at the given precision; on singular
// multisets the quotient pairing is inverted. Entries of phi and the reps
// must be real.
CMatrix universal_R_in_rep(const std::vector<std::vector<double>>& phi, const QuantumRep& rep1,
                           const QuantumRep& rep2, int grade, int bits = 512);
// Same, with hbar-scaled data: phi = hbar * phi_unit, passed exactly to MPFR.
CMatrix universal_R_in_rep_scaled(const std::vector<std::vector<double>>& phi_unit, double hbar,
                                  const std::function<QuantumRep(double)>& rep1,
                                  const std::function<QuantumRep(double)>& rep2, int grade,
                                  int bits = 512);

// Numeric pairing matrix in the convention of pairing_matrix, at x_ab = exp(phi[a][b]).
Eigen::MatrixXd numeric_pairing_matrix(const std::vector<std::vector<double>>& phi,
                                       const std::vector<Word>& words);

// U_q(sl2) fundamental with x = e^hbar: e -> E, e_- -> 2 sinh(hbar/2) F.
QuantumRep sl2_quantum_fundamental(double hbar);
// Loop representation at lambda of the A1(1) algebra with x00 = x11 = e^hbar,
// x01 = x10 = e^-hbar: e_1 -> E, e_0 -> lambda F, e_-1 -> c F, e_-0 -> c E / lambda.
QuantumRep sl2_quantum_loop(double hbar, double lambda);
// Largest entry of [e_a, e_{-b}] - delta_ab (e^{phi(a,.)} - e^{-phi(.,a)}) and of the
// weight compatibility of the generators.
double quantum_rep_residual(const std::vector<std::vector<double>>& phi, const QuantumRep& rep);
std::vector<std::vector<double>> sl2_phi_unit();
std::vector<std::vector<double>> a11_phi_unit();

// R(hbar) in the fundamental of sl(2), through the given grade. Throws
// TruncationTooCoarse for grade < 1.
CMatrix sl2_standard_R(double hbar, int grade = 2);
// R(hbar) in V(1) (x) V(x) of the loop algebra, 0 < x < 1. Throws
// TruncationTooCoarse when x^(grade/2 + 1) > 1e-8.
CMatrix sl2_loop_R(double hbar, double x, int grade = 8);

// Closed form six-vertex R(q, x) in the principal picture:
// a = 1 - q^2/x, b = q (1 - 1/x), c = (1 - q^2)/sqrt(x).
CMatrix trig_quantum_R(cplx q, cplx x);
CMatrix trig_quantum_R(cplx q, cplx x, cplx sqrt_x);

} // namespace qgf
