#pragma once

// Deformations of the standard R-matrix: admissible pairs, the first order
// term R1, q-exponential and compound twists, the cocycle condition, twisted
// R-matrices and coproducts.
//
// Series in eps are vectors indexed by the eps order. Bodies have the Cartan
// prefactor R0 divided out on the left, as in standard_rmatrix.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgf/standard_rmatrix.hpp"

namespace qgf {

enum class PairType { SigmaMinusRho, MinusSigmaRho, SigmaRho, MinusSigmaMinusRho };
const char* pair_type_name(PairType t);

// A condition e^{tag} = 1 on the spec surface.
struct TagCondition {
    std::string name;
    Tag tag;
    bool holds = false;
};

struct DeformationPair {
    int sigma = 0, rho = 0;
    PairType type = PairType::SigmaMinusRho;
    std::vector<TagCondition> conditions;
    bool admissible = false;
};

struct PairReport {
    std::vector<DeformationPair> admissible;
    std::vector<DeformationPair> diagnostics; // every ordered pair and type
};

// e^{phi(., rho) + phi(sigma, .)}
Tag admissibility_tag(int sigma, int rho);
DeformationPair make_pair(const AlgebraSpec& spec, int sigma, int rho,
                          PairType type = PairType::SigmaMinusRho);
PairReport admissible_pairs(const AlgebraSpec& spec);

// K e_sigma (x) K e_{-rho} and K e_{-rho} (x) K e_sigma with K = e^{phi(., rho)}.
Tensor driving_term(const AlgebraSpec& spec, int sigma, int rho);
Tensor driving_term_flipped(const AlgebraSpec& spec, int sigma, int rho);

// B_g X - conj(X') B_g for the grade g part B_g of the body, so that
// R R1-piece = R0 times this. Summed over g it is the body of R1.
Tensor r1_piece(const TCoefficients& t, const DeformationPair& pair, int g);
// Terms of the R1 body with slot-1 alternative grade (minus minus plus
// length) <= D. Needs t through grade D + 1.
Tensor first_order_R1(const TCoefficients& t, const DeformationPair& pair, int D);

// eps-linear part of the Yang-Baxter body of R + eps R1, restricted to slot-1
// minus length <= D and slot-3 plus length <= D. Needs t through grade D + 1.
// With check set, throws PairNotAdmissible off the surface.
Tensor eps_linear_yb_residual(const TCoefficients& t, const DeformationPair& pair, int D,
                              bool check = true);

// ---------------------------------------------------------------------------
// f generators: f_s = e^{-phi(s,.)} e_s, f_{-r} = e_{-r} e^{phi(.,r)}

Tensor f_plus(const AlgebraSpec& spec, int s);
Tensor f_minus(const AlgebraSpec& spec, int r);
Tensor f_plus_word(const AlgebraSpec& spec, const Word& w);
Tensor f_minus_word(const AlgebraSpec& spec, const Word& w);

// Coefficients of f_{sigma word} (x) f_{-rho word}.
using FForm = std::map<std::pair<Word, Word>, Scalar>;
Tensor materialize(const AlgebraSpec& spec, const FForm& f);

using Series = std::vector<Tensor>; // index = eps order

struct TauMap {
    std::vector<int> domain; // Gamma_1 generators
    std::vector<int> image;  // tau(domain[i])
    std::optional<int> cyclic_order;

    std::optional<int> apply(int s) const;
    // tau^m s when defined.
    std::optional<int> power(int s, int m) const;
    // Number of m >= 1 with tau^m s defined; capped at cap for cyclic maps.
    int chain_length(int s, int cap) const;
    bool disjoint() const;
};

struct Twist {
    int eps_order = 0;
    // by_order[k]: coefficient of eps^k as an f-form.
    std::vector<FForm> by_order;
    Series series(const AlgebraSpec& spec) const;
};

// e_q^{-eps f_s (x) f_{-r}} with q = 1/x_{sr}, through eps^order.
Twist elementary_twist(const AlgebraSpec& spec, const DeformationPair& pair, int order);

// F = F^1 F^2 ... with F^m = sum_n eps^{nm} F^m_n and
// F^m_n = (-1)^n sum tbar^{(s')}_{(s)} f_{s1}..f_{sn} (x) f_{-tau^m s'1}..f_{-tau^m s'n}.
// tbar are the t coefficients of the spec with x_ab replaced by 1/x_ba. Every (s, tau s) must
// be admissible. A cyclic map requires |eps| < 1 when eps is numeric.
Twist compound_twist(const AlgebraSpec& spec, const TauMap& tau, int eps_order,
                     std::optional<double> numeric_eps = std::nullopt);

// One factor part of F for a cyclic map of order N, as eps times
// -(1 - eps^N)^{-1} sum_{m=1..N} sum_s eps^{m-1} f_s (x) f_{-tau^m s},
// with eps a variable of the parameter field.
Tensor cyclic_first_factor(const AlgebraSpec& spec, const TauMap& tau, VarId eps);

// Residual of the recursion satisfied by the n-factor parts F_n of F:
// (1 (x) K d) F_n + sum eps^m [1 (x) f_s, F_n] + sum eps^{m-1} (f_s (x) K^s) F_{n-1}
// as a series in eps (internal powers). One entry per n = 1..max_n; zero
// tensors when satisfied.
std::vector<Series> recursion_residual(const AlgebraSpec& spec, const TauMap& tau,
                                       const Twist& F, int max_n);

// ((1 (x) D21) F) F12 - ((D13 (x) 1) F) F31 through eps^order.
Series cocycle_residual(const AlgebraSpec& spec, const Series& F, int order);

// Series algebra.
Series series_mul(const AlgebraSpec& spec, const Series& a, const Series& b, int order);
Series series_inverse(const AlgebraSpec& spec, const Series& a, int order);
Series series_flip(const Series& a);
bool series_zero(const Series& a);

// Body of (F^t)^{-1} R F with R through grade D: conj((F^t)^{-1}) B F.
Series twist_R(const TCoefficients& t, const Series& F, int D, int order);
// (F^t)^{-1} Delta(x) F^t.
Series twisted_coproduct(const AlgebraSpec& spec, const Series& F, const Tensor& x, int order);
// Delta_1(x) = [Delta(x), K e_{-rho} (x) K e_sigma].
Tensor first_order_coproduct(const AlgebraSpec& spec, const DeformationPair& pair,
                             const Tensor& x);
// (D~ (x) 1) D~(x) - (1 (x) D~) D~(x) through eps^order.
Series twisted_coassociativity(const AlgebraSpec& spec, const Series& F, const Tensor& x,
                               int order);

// eps-linear Hopf axioms: (E (x) id) Delta_1 = 0 and
// m(id (x) S1) Delta + m(id (x) S) Delta_1 = 0 with S1(x) = [K e_{-rho} e_sigma, S(x)],
// on all generators; only nonzero residuals returned.
std::vector<NamedResidual> deformed_hopf_residuals(const AlgebraSpec& spec,
                                                   const DeformationPair& pair);

} // namespace qgf
