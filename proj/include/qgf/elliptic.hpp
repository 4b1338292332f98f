#pragma once

// Cyclic twist of the sl(2) loop R-matrix in the fundamental representation:
// the factors F^m, the truncated product R_eps = (F^t)^{-1} R F, eight-vertex
// checks and the classical elliptic series.

#include <array>
#include <vector>

#include "qgf/classical.hpp"

namespace qgf {

struct EllipticParams {
    cplx q = 0.8;
    cplx eps = 0.3;
    cplx x = 1.0;      // lambda/mu
    cplx sqrt_x = 0.0; // branch of sqrt(x); 0 selects the principal branch
    int M = 0;         // number of factors; 0 selects the default truncation

    // x = e^{2 pi i u} with sqrt(x) = e^{pi i u}.
    static EllipticParams from_u(cplx q, cplx eps, cplx u, int M = 0);
    cplx root() const;
};

struct EightVertex {
    cplx a, b, c, d;
    CMatrix matrix() const;
};

// Smallest M with |eps|^M < floor, capped at 200. Throws EpsOutOfDisk for
// |eps| >= 1 and TruncationInsufficient when the cap is reached.
int default_truncation(cplx eps, double floor = 1e-12);

// Factor F^m, m >= 1, in the principal picture:
// odd m:  a = 1 - eps^{2m}/x,     b = 1 - eps^{2m} q^2/x, c = 0, d = eps^m (1/q - q)/sqrt(x)
// even m: a = 1 - eps^{2m} q^2/x, b = 1 - eps^{2m}/x,     c = eps^m (1/q - q)/sqrt(x), d = 0
EightVertex elliptic_Fm(int m, const EllipticParams& p);
// F^1 F^2 ... F^M at the spectral ratio of p.
CMatrix twist_product(const EllipticParams& p, int M);

struct EllipticR {
    CMatrix R;
    EightVertex entries;
    int M = 0;
    // (a + d) : (a - d) : (b + c) : (b - c), normalized by a - d.
    std::array<cplx, 4> ratios{};
};

// (F^t)^{-1} R F with R = trig_quantum_R(q, x) and F^t(x) = P F(1/x) P.
// Throws EpsOutOfDisk, PoleAtPoint near singular factors.
EllipticR elliptic_R(const EllipticParams& p);

// Entries outside the eight-vertex pattern are exactly zero.
bool eight_vertex_sparse(const CMatrix& m);

// ||R12(u) R13(u+v) R23(v) - R23(v) R13(u+v) R12(u)|| / ||R12 R13 R23||.
double ybe_residual(const std::function<CMatrix(cplx)>& R_of_u, cplx u, cplx v);

// R F1(x) - P F1(1/x) P R with F1 = (1/q - q) x^{-1/2}(e12 (x) e12 + e21 (x) e21), the
// eps-linear part of the twist in the representation.
CMatrix elliptic_first_order(cplx q, cplx x, cplx sqrt_x);

// Trigonometric r in the principal picture plus n_terms of the elliptic sine
// series, as a function of u with additive threading. Throws EpsOutOfDisk.
ClassicalR elliptic_classical_r(cplx eps, int n_terms);
// diag(1, sqrt(x)) (x) 1 conjugation taking trig_r(sl2, x) to the principal picture.
CMatrix principal_gauge(const CMatrix& r, cplx x);

} // namespace qgf
