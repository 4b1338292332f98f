#pragma once

// Standard universal R-matrix: pairing matrices, t coefficients, recursion
// and Yang-Baxter residuals, Hopf structure maps and the intertwiner check.
//
// R = exp(phi^{ab} H_a (x) H_b) * B with B = 1 + sum t^{(a')}_{(a)} e_{-a} (x) e_{a'}.
// The Cartan prefactor is never expanded; it is moved through tensors with
//   (x (x) y) R0 = R0 (x e^{-phi(., w_y)} (x) e^{-phi(w_x, .)} y).

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qgf/free_algebra.hpp"
#include "qgf/linalg.hpp"

namespace qgf {

using Multiset = std::vector<int>; // sorted generator indices

std::vector<Word> multiset_words(const Multiset& ms);
std::vector<Multiset> multisets(int n_gens, int size);
std::vector<Word> all_words(int n_gens, int length);
Multiset multiset_of(const Word& w);
std::string multiset_str(const AlgebraSpec& spec, const Multiset& ms);

// S^{(b)}_{(a)} = d_{-b_n} ... d_{-b_1} e_{a_1} ... e_{a_n}; rows a, columns b.
Matrix pairing_matrix(const AlgebraSpec& spec, const std::vector<Word>& words);
// S'^{(b)}_{(a)} = d_{a_n} ... d_{a_1} e_{-b_1} ... e_{-b_n}.
Matrix pairing_matrix_prime(const AlgebraSpec& spec, const std::vector<Word>& words);

// Interns the cyclotomic factors of the products x_G over sub-multisets G so
// pairing-matrix denominators are found in factored form.
void seed_pairing_factors(const AlgebraSpec& spec, int max_grade);

enum class TMethod { Inverse, LeftRecursion, RightRecursion };

struct TSlice {
    Multiset ms;
    std::vector<Word> words;
    std::map<Word, int> index;
    Matrix S;
    Matrix t; // t[i][j] = t^{(words[j])}_{(words[i])}
};

class TCoefficients {
public:
    TCoefficients(AlgebraSpec spec, int max_grade, TMethod method = TMethod::Inverse);

    const AlgebraSpec& spec() const { return spec_; }
    int max_grade() const { return max_grade_; }
    TMethod method() const { return method_; }

    const TSlice& slice(const Multiset& ms) const;
    // t^{upper}_{lower}; zero unless the words are reorderings of each other.
    Scalar coeff(const Word& lower, const Word& upper) const;
    // t_{a} = t^{(a')}_{(a)} e_{a'} (plus algebra, one slot).
    Tensor lower(const Word& a) const;
    // t^{g} = t^{(g)}_{(g')} e_{-g'} (minus algebra, one slot).
    Tensor upper(const Word& g) const;
    AlgebraElement lower_element(const Word& a) const;
    // Grade l part of B (two slots); grade 0 is 1 (x) 1.
    Tensor body(int grade) const;
    Tensor body_upto(int grade) const;

private:
    AlgebraSpec spec_;
    int max_grade_;
    TMethod method_;
    struct Cache {
        std::mutex mu;
        std::map<Multiset, std::unique_ptr<TSlice>> slices;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    std::unique_ptr<TSlice> compute(const Multiset& ms) const;
};

// Residual of [t_a, e_{-g}] - e^{phi(g,.)} d t_{a2..} + t_{..a(l-1)} d e^{-phi(.,g)}
// for every word a of length l and generator g; only nonzero entries returned.
struct RecursionResidual {
    Word alpha;
    int gamma;
    Tensor residual;
};
std::vector<RecursionResidual> verify_recursion(const TCoefficients& t, int l);

// Dual form of the recursion: [e_g, t^{a}] = t^{..} d e^{phi(g,.)} - e^{-phi(.,g)} d t^{a2..}.
std::vector<RecursionResidual> verify_recursion_upper(const TCoefficients& t, int l);

// Sum over m of the grade (l, n) Yang-Baxter component for each pair of index
// sets; only nonzero entries returned.
struct YBResidual {
    Word alpha;
    Word gamma;
    Tensor residual;
};
Tensor yb_component(const TCoefficients& t, const Word& alpha, const Word& gamma);
std::vector<YBResidual> yb_grade_residual(const TCoefficients& t, int l, int n);

// Full three-slot Yang-Baxter body R12 R13 R23 - R23 R13 R12 with the Cartan
// prefactor divided out, restricted to slot-1 minus length <= D and slot-3
// plus length <= D.
Tensor yb_full_residual(const TCoefficients& t, int D);

// Moving the Cartan prefactor R0_{ij} through a tensor: (R0_ij)^{-1} X R0_ij.
Tensor conj_r0(const AlgebraSpec& spec, const Tensor& x, int i, int j);
// Right / left multiplication of one slot by a tag, in normal form.
SlotKey slot_times_tag(const AlgebraSpec& spec, const SlotKey& k, const Tag& t, Scalar& coef);
SlotKey tag_times_slot(const AlgebraSpec& spec, const Tag& t, const SlotKey& k, Scalar& coef);
// Weight root vector of a slot (signed letter counts).
Tag tag_phi_left(const std::array<int, kMaxGens>& w, int sign);  // e^{sign phi(w,.)}
Tag tag_phi_right(const std::array<int, kMaxGens>& w, int sign); // e^{sign phi(.,w)}

// ---------------------------------------------------------------------------
// Hopf structure

// Generator designators for the Hopf maps.
struct Generator {
    enum Kind { Plus, Minus, H } kind;
    int index;
};

Tensor generator(const AlgebraSpec& spec, const Generator& g);
Tensor coproduct(const AlgebraSpec& spec, const Generator& g);
Tensor antipode(const AlgebraSpec& spec, const Generator& g);
Scalar counit(const AlgebraSpec& spec, const Generator& g);

// Extensions to arbitrary one-slot elements.
Tensor coproduct(const AlgebraSpec& spec, const Tensor& x);
Tensor antipode(const AlgebraSpec& spec, const Tensor& x);
Scalar counit(const Tensor& x);
// Applies the coproduct to one slot of a multi-slot tensor (slot count + 1).
Tensor coproduct_at(const AlgebraSpec& spec, const Tensor& x, int slot);
// Multiplies all slots together in order.
Tensor multiply_slots(const AlgebraSpec& spec, const Tensor& x);
Tensor flip(const Tensor& x); // two slots

// Residuals of the coproduct on the defining relations; empty when exact.
struct NamedResidual {
    std::string name;
    Tensor residual;
};
std::vector<NamedResidual> coproduct_homomorphism_residuals(const AlgebraSpec& spec);
std::vector<NamedResidual> antipode_residuals(const AlgebraSpec& spec);
std::vector<NamedResidual> coassociativity_residuals(const AlgebraSpec& spec);

// Delta(e_b) R - R Delta'(e_b) with the prefactor divided out, slot-2 plus
// length <= D.
Tensor intertwiner_residual(const TCoefficients& t, const Generator& g, int D);

} // namespace qgf
