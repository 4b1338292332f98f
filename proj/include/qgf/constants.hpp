#pragma once

// Constants of the free algebra: elements killed by every lowering derivative.
// Linear systems per multiset, their determinants, q-Serre constants and
// generalized Cartan matrices.

#include <complex>
#include <cstdint>
#include <vector>

#include "qgf/free_algebra.hpp"
#include "qgf/linalg.hpp"
#include "qgf/standard_rmatrix.hpp"

namespace qgf {

struct ConstantSystem {
    Multiset multiset;
    std::vector<Word> basis;
    // Row j: coefficient of the word basis[j] minus its first letter in
    // d_{basis[j][0]} X, as a linear form in the coefficients of X.
    Matrix matrix;
};

ConstantSystem constant_system(const AlgebraSpec& spec, const Multiset& ms);

// Nullspace basis of the system; every element is checked against all left
// lowering derivatives.
std::vector<AlgebraElement> find_constants(const AlgebraSpec& spec, const Multiset& ms);

// True when every left lowering derivative of c vanishes, and with both_sides
// every right one too. The right derivatives of a constant vanish only modulo
// constants of lower grade, so both_sides is exact only when there are none.
bool is_constant(const AlgebraSpec& spec, const AlgebraElement& c, bool both_sides = true);
// C' = sum C^{a1..an} e_{-an} ... e_{-a1}; a constant of the minus algebra when
// C is one of the plus algebra.
AlgebraElement mirror_constant(const AlgebraElement& c);

// sigma_{ij} = q^{ij} q^{ji} with q^{ij} = 1/x_{ij}.
Scalar sigma(const AlgebraSpec& spec, int i, int j);

// Claimed determinant for n distinct letters: for every subset G of size s >= 2
// the factor 1 - prod_{i<j in G} sigma_ij with multiplicity (n-s)! (s-2)!, so
// that each group of factors has total degree n! in the q's.
Scalar claimed_distinct_determinant(const AlgebraSpec& spec, const Multiset& ms);

struct DeterminantCheck {
    enum Outcome { ExactEqual, NumericAgree, Mismatch } outcome;
    double max_rel_err = 0; // numeric mode only
    std::complex<double> constant{1, 0};
};

// Exact comparison up to a nonzero constant for n <= 3; numeric comparison at
// `points` seeded random points otherwise.
DeterminantCheck determinant_check(const AlgebraSpec& spec, const Multiset& ms,
                                   const Scalar& claimed, int points = 20,
                                   std::uint64_t seed = 1, double tol = 1e-9);

// Numeric determinant of the constant system at a point given by variable values.
std::complex<double> numeric_determinant(const AlgebraSpec& spec, const Multiset& ms,
                                         const std::vector<std::complex<double>>& pt);

struct SerreData {
    int k = 0;
    int alpha = 0, beta = 0;
    std::vector<Scalar> Q;
    Substitution surface;  // x_{beta alpha} solved from 1 - q^{k-1} sigma = 0
    AlgebraElement constant{Sign::Plus};
};

// Q^k_m = (-q^{ab})^m q^{m(m-1)/2} binom(k,m)_q with q = q^{aa}.
std::vector<Scalar> serre_coefficients(const AlgebraSpec& spec, int alpha, int beta, int k);
// Same coefficients written with e^{phi}: (-1)^m e^{m phi(a,b)} p^{m(m-1)/2} binom(k,m)_p,
// p = e^{phi(a,a)}.
std::vector<Scalar> serre_coefficients_exp(const AlgebraSpec& spec, int alpha, int beta, int k);
SerreData serre_constant(const AlgebraSpec& spec, int alpha, int beta, int k,
                         std::uint64_t seed = 1);

Scalar q_binomial(const Scalar& q, int n, int m);

struct CartanData {
    std::vector<std::vector<mpq_class>> A;
    enum Kind { Finite, Affine, Other } kind;
};
const char* cartan_kind_name(CartanData::Kind k);

// Requires each x_{ab} to be a power of one variable.
CartanData cartan_classify(const AlgebraSpec& spec);

} // namespace qgf
