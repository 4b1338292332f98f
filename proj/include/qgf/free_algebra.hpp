#pragma once

// Free algebras A+ / A- on a finite generator set, their q-difference
// operators, and normal ordered elements of A, A (x) A, A (x) A (x) A.
//
// Normal form of a single tensor slot: (minus word)(Cartan part)(plus word).
// The Cartan part is a tag e^{phi(nu,.) + phi(.,mu)} times a monomial in the
// H_a. Tags are reduced modulo the lattice of tags whose character on every
// generator is identically 1 on the spec's surface.

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qgf/scalars.hpp"

namespace qgf {

constexpr int kMaxGens = 8;
constexpr int kMaxCartan = 4;

using Word = std::string; // letters are generator indices 0..N-1

Word word(std::initializer_list<int> letters);
std::string word_str(const Word& w, const std::vector<std::string>& labels);

struct Tag {
    std::array<int8_t, kMaxGens> nu{}; // e^{phi(nu, .)}
    std::array<int8_t, kMaxGens> mu{}; // e^{phi(., mu)}

    bool is_zero() const;
    Tag operator+(const Tag& o) const;
    Tag operator-() const;
    auto operator<=>(const Tag&) const = default;
};

Tag tag_left(int alpha, int sign = 1);  // e^{sign phi(alpha,.)}
Tag tag_right(int alpha, int sign = 1); // e^{sign phi(.,alpha)}

struct HExp {
    std::array<uint8_t, kMaxCartan> e{};
    bool is_zero() const;
    auto operator<=>(const HExp&) const = default;
};

struct SlotKey {
    Word minus;
    Tag tag;
    HExp h;
    Word plus;

    int grade() const { return (int)plus.size() - (int)minus.size(); }
    auto operator<=>(const SlotKey&) const = default;
};

class AlgebraSpec {
public:
    AlgebraSpec() = default;
    // x(a,b) = e^{phi(a,b)} for generators a,b; weights(c,b) = H_c(b).
    AlgebraSpec(std::vector<std::string> gen_labels, std::vector<std::string> cartan_labels,
                std::vector<std::vector<Scalar>> x, std::vector<std::vector<mpq_class>> weights);

    // x_{ab} = fresh variable named prefix + label_a + label_b.
    static AlgebraSpec generic(int n, const std::string& prefix = "x", int first_label = 1);
    static AlgebraSpec generic(const std::vector<std::string>& labels,
                               const std::string& prefix = "x");

    AlgebraSpec with_surface(const Substitution& sub) const;

    int n() const { return (int)labels_.size(); }
    int m() const { return (int)cartan_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& cartan_labels() const { return cartan_; }
    int index_of(const std::string& label) const;
    const Scalar& x(int a, int b) const { return x_[a][b]; }
    const Scalar& xinv(int a, int b) const { return xinv_[a][b]; }
    const mpq_class& weight(int c, int b) const { return w_[c][b]; }
    const Substitution& surface() const { return surface_; }
    std::string word_str(const Word& w) const { return qgf::word_str(w, labels_); }

    // Character of a tag on generator b: factor produced by tag e_b = e_b tag chi.
    Scalar character(const Tag& t, int b) const;
    bool tag_trivial(const Tag& t) const;
    Tag canonical(const Tag& t) const;

    // e_a e_{-b} in normal form, memoized for words.
    struct Reordered {
        Scalar c;
        Word minus;
        Tag tag;
        Word plus;
    };
    const std::vector<Reordered>& reorder(const Word& plus, const Word& minus) const;

private:
    std::vector<std::string> labels_, cartan_;
    std::vector<std::vector<Scalar>> x_, xinv_;
    std::vector<std::vector<mpq_class>> w_;
    Substitution surface_;
    // Integer character map data for canonical tags.
    bool monomial_chars_ = false;
    std::vector<std::vector<int>> lattice_; // HNF rows of trivial tag lattice
    std::vector<int> pivots_;

    struct Cache {
        std::mutex mu;
        std::map<std::pair<Word, Word>, std::unique_ptr<std::vector<Reordered>>> reorder;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

    void init();
    std::vector<Reordered> compute_reorder(const Word& plus, const Word& minus) const;
};

// ---------------------------------------------------------------------------
// free algebras

enum class Sign { Plus, Minus };
enum class Dir { Left, Right };

class AlgebraElement {
public:
    AlgebraElement(Sign s = Sign::Plus) : sign_(s) {}
    static AlgebraElement unit(Sign s);
    static AlgebraElement word(Sign s, const Word& w, const Scalar& c = 1);

    Sign sign() const { return sign_; }
    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const Word& w) const;
    void add(const Word& w, const Scalar& c);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& c) const;
    AlgebraElement substituted(const Substitution& s) const;

    std::optional<int> grade() const; // nullopt when mixed
    std::string str(const AlgebraSpec& spec) const;

private:
    Sign sign_;
    std::map<Word, Scalar> terms_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

// dir Left: the operator acts from the left. On A+ the operator is the
// lowering derivative d_{-gamma}; on A- it is the raising derivative d_gamma.
AlgebraElement apply_derivative(const AlgebraSpec& spec, Dir dir, int gamma,
                                const AlgebraElement& x);

// Phi(C) X = sum C^{i1..in} d_{i1} ... d_{in} X with left lowering derivatives.
AlgebraElement constant_operator_apply(const AlgebraSpec& spec, const AlgebraElement& c,
                                       const AlgebraElement& x);
// d_C Y = sum C^{i1..in} d_{i1} ... d_{i(n-1)} Y_{in}.
AlgebraElement closedness(const AlgebraSpec& spec, const AlgebraElement& c,
                          const std::vector<AlgebraElement>& y);

// ---------------------------------------------------------------------------
// normal ordered tensors

class Tensor {
public:
    using Key = std::vector<SlotKey>;

    explicit Tensor(int slots = 1) : slots_(slots) {}
    static Tensor unit(int slots);
    static Tensor term(const Key& k, const Scalar& c);

    int slots() const { return slots_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add(const Key& k, const Scalar& c);
    void add(const Tensor& t, const Scalar& c = 1);
    Scalar coeff(const Key& k) const;

    Tensor operator+(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor scaled(const Scalar& c) const;
    Tensor substituted(const Substitution& s) const;

    // Keep only terms accepted by pred.
    template <class Pred> Tensor filtered(Pred pred) const {
        Tensor r(slots_);
        for (auto& [k, c] : terms_)
            if (pred(k)) r.terms_.emplace(k, c);
        return r;
    }

    std::string str(const AlgebraSpec& spec) const;

private:
    int slots_;
    std::map<Key, Scalar> terms_;
};

Tensor mul(const AlgebraSpec& spec, const Tensor& a, const Tensor& b);
Tensor mul(const AlgebraSpec& spec, const Tensor& a, const Tensor& b, const Tensor& c);
Tensor tensor_product(const Tensor& a, const Tensor& b);
// Moves slots: result slot i takes input slot perm[i]; input must cover slots.
Tensor permute(const Tensor& t, const std::vector<int>& perm);
// Embeds a 2-slot tensor into a 3-slot one at the given positions (others 1).
Tensor embed(const Tensor& t, int slots, const std::vector<int>& positions);

// Builders for single-slot elements.
Tensor gen_plus(int a);
Tensor gen_minus(int a);
Tensor cartan_tag(const AlgebraSpec& spec, const Tag& t);
Tensor cartan_h(int a);
Tensor plus_word(const Word& w, const Scalar& c = 1);
Tensor minus_word(const Word& w, const Scalar& c = 1);
Tensor from_plus(const AlgebraElement& x);
Tensor from_minus(const AlgebraElement& x);

// Weight per Cartan label, or nullopt when terms disagree.
std::optional<std::vector<mpq_class>> weight(const AlgebraSpec& spec, const Tensor& t);

// Sum of signed letter counts per generator across all slots.
std::array<int, kMaxGens> root_content(const SlotKey& k);

} // namespace qgf
