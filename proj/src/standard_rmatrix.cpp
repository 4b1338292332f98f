#include "qgf/standard_rmatrix.hpp"

#include <algorithm>
#include <numeric>

namespace qgf {

std::vector<Word> multiset_words(const Multiset& ms) {
    Word w;
    for (int a : ms) w.push_back((char)a);
    std::sort(w.begin(), w.end());
    std::vector<Word> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

std::vector<Multiset> multisets(int n_gens, int size) {
    std::vector<Multiset> out;
    Multiset cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == size) {
            out.push_back(cur);
            return;
        }
        for (int a = start; a < n_gens; ++a) {
            cur.push_back(a);
            self(self, a);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<Word> all_words(int n_gens, int length) {
    std::vector<Word> out{Word()};
    for (int i = 0; i < length; ++i) {
        std::vector<Word> next;
        for (auto& w : out)
            for (int a = 0; a < n_gens; ++a) next.push_back(w + (char)a);
        out = std::move(next);
    }
    return out;
}

Multiset multiset_of(const Word& w) {
    Multiset m;
    for (char c : w) m.push_back((unsigned char)c);
    std::sort(m.begin(), m.end());
    return m;
}

std::string multiset_str(const AlgebraSpec& spec, const Multiset& ms) {
    std::string s = "{";
    for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? "," : "") + spec.labels()[ms[i]];
    return s + "}";
}

Matrix pairing_matrix(const AlgebraSpec& spec, const std::vector<Word>& words) {
    int n = (int)words.size();
    std::map<Word, int> idx;
    for (int i = 0; i < n; ++i) idx[words[i]] = i;
    Matrix S(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            AlgebraElement x = AlgebraElement::word(Sign::Plus, words[i]);
            for (char b : words[j]) {
                x = apply_derivative(spec, Dir::Left, (unsigned char)b, x);
                if (x.is_zero()) break;
            }
            S[i][j] = x.coeff(Word());
        }
    }
    return S;
}

Matrix pairing_matrix_prime(const AlgebraSpec& spec, const std::vector<Word>& words) {
    int n = (int)words.size();
    Matrix S(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            AlgebraElement y = AlgebraElement::word(Sign::Minus, words[j]);
            for (char a : words[i]) {
                y = apply_derivative(spec, Dir::Left, (unsigned char)a, y);
                if (y.is_zero()) break;
            }
            S[i][j] = y.coeff(Word());
        }
    }
    return S;
}

// ---------------------------------------------------------------------------
// TCoefficients

void seed_pairing_factors(const AlgebraSpec& spec, int max_grade) {
    static const std::vector<std::vector<int>> cyclotomic = {
        {}, {-1, 1}, {1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 1, 1, 1, 1}, {1, -1, 1}};
    for (int size = 2; size <= max_grade; ++size)
        for (auto& ms : multisets(spec.n(), size)) {
            Scalar xg(1);
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = 0; j < ms.size(); ++j)
                    if (i != j) xg = xg * spec.x(ms[i], ms[j]);
            if (!xg.is_monomial() || xg.numerator().lead().c != 1) continue;
            Mono m = xg.numerator().lead().m;
            int g = 0;
            for (int v = 0; v < kMaxVars; ++v) g = std::gcd(g, std::abs((int)m.e[v]));
            if (g == 0) continue;
            Mono root;
            for (int v = 0; v < kMaxVars; ++v) root.e[v] = (int16_t)(m.e[v] / g);
            for (int d = 1; d <= std::min(6, g * max_grade); ++d) {
                std::vector<Poly::Term> ts;
                Mono p;
                for (int c : cyclotomic[d]) {
                    if (c) ts.push_back({p, mpq_class(c)});
                    p = p * root;
                }
                mpq_class c;
                Mono shift;
                Poly prim;
                Poly::from_terms(ts).split(c, shift, prim);
                intern_factor(prim);
            }
        }
}

TCoefficients::TCoefficients(AlgebraSpec spec, int max_grade, TMethod method)
    : spec_(std::move(spec)), max_grade_(max_grade), method_(method) {
    seed_pairing_factors(spec_, max_grade_);
}

const TSlice& TCoefficients::slice(const Multiset& ms) const {
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->slices.find(ms);
        if (it != cache_->slices.end()) return *it->second;
    }
    auto s = compute(ms);
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto [it, ok] = cache_->slices.emplace(ms, std::move(s));
    return *it->second;
}

namespace {

// Solves d_{-g} t_a = delta t_{a2..} (left) or t_a d_{-g} = t_{..} delta (right)
// for every word a of the multiset as one overdetermined system.
Matrix t_by_recursion(const TCoefficients& tc, const TSlice& s, bool left) {
    const AlgebraSpec& spec = tc.spec();
    int n = (int)s.words.size();
    // rows: (g, v) where v ranges over words of ms minus g
    std::vector<std::pair<int, Word>> rows;
    std::map<std::pair<int, Word>, int> row_idx;
    for (auto& w : s.words)
        for (std::size_t j = 0; j < w.size(); ++j) {
            std::pair<int, Word> key{(unsigned char)w[j], w.substr(0, j) + w.substr(j + 1)};
            if (!row_idx.count(key)) {
                row_idx[key] = (int)rows.size();
                rows.push_back(key);
            }
        }
    int R = (int)rows.size();
    Matrix A(R, std::vector<Scalar>(n + n));
    for (int c = 0; c < n; ++c) {
        AlgebraElement e = AlgebraElement::word(Sign::Plus, s.words[c]);
        for (int g = 0; g < spec.n(); ++g) {
            auto d = apply_derivative(spec, left ? Dir::Left : Dir::Right, g, e);
            for (auto& [v, x] : d.terms()) A[row_idx.at({g, v})][c] = x;
        }
    }
    // right-hand sides: column n + i for word a_i
    for (int i = 0; i < n; ++i) {
        const Word& a = s.words[i];
        int g = (unsigned char)(left ? a.front() : a.back());
        Word rest = left ? a.substr(1) : a.substr(0, a.size() - 1);
        auto lower = tc.lower_element(rest);
        for (auto& [v, x] : lower.terms()) A[row_idx.at({g, v})][n + i] = x;
    }
    // Gaussian elimination on the coefficient block
    Matrix M = A;
    auto piv_count = 0;
    std::vector<int> piv;
    {
        int r = 0;
        for (int c = 0; c < n && r < R; ++c) {
            int best = -1;
            for (int i = r; i < R; ++i)
                if (!M[i][c].is_zero() &&
                    (best < 0 || M[i][c].numerator().size() < M[best][c].numerator().size()))
                    best = i;
            if (best < 0) continue;
            std::swap(M[r], M[best]);
            Scalar p = M[r][c].inverse();
            for (auto& x : M[r])
                if (!x.is_zero()) x = x * p;
            for (int i = 0; i < R; ++i) {
                if (i == r || M[i][c].is_zero()) continue;
                Scalar f = M[i][c];
                for (int j = 0; j < 2 * n; ++j)
                    if (!M[r][j].is_zero()) M[i][j] = M[i][j] - f * M[r][j];
            }
            piv.push_back(c);
            ++r;
        }
        piv_count = r;
    }
    if (piv_count < n) throw ObstructionPresent("recursion has a kernel");
    for (int i = piv_count; i < R; ++i)
        for (int j = n; j < 2 * n; ++j)
            if (!M[i][j].is_zero()) throw ObstructionPresent("recursion is inconsistent");
    Matrix t(n, std::vector<Scalar>(n));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i) t[i][piv[r]] = M[r][n + i];
    return t;
}

} // namespace

std::unique_ptr<TSlice> TCoefficients::compute(const Multiset& ms) const {
    auto s = std::make_unique<TSlice>();
    s->ms = ms;
    s->words = multiset_words(ms);
    for (int i = 0; i < (int)s->words.size(); ++i) s->index[s->words[i]] = i;
    s->S = pairing_matrix(spec_, s->words);
    if (ms.size() <= 1) {
        s->t = identity_matrix((int)s->words.size());
        return s;
    }
    if (method_ == TMethod::Inverse) {
        auto inv = inverse(s->S);
        if (!inv) throw ObstructionPresent("pairing matrix singular for " + multiset_str(spec_, ms));
        s->t = std::move(*inv);
    } else {
        try {
            s->t = t_by_recursion(*this, *s, method_ == TMethod::LeftRecursion);
        } catch (const ObstructionPresent&) {
            throw ObstructionPresent("recursion not uniquely solvable for " +
                                     multiset_str(spec_, ms));
        }
    }
    return s;
}

Scalar TCoefficients::coeff(const Word& lower, const Word& upper) const {
    if (lower.size() != upper.size()) return Scalar();
    if (lower.empty()) return 1;
    Multiset ml = multiset_of(lower);
    if (ml != multiset_of(upper)) return Scalar();
    const TSlice& s = slice(ml);
    return s.t[s.index.at(lower)][s.index.at(upper)];
}

AlgebraElement TCoefficients::lower_element(const Word& a) const {
    AlgebraElement r(Sign::Plus);
    if (a.empty()) {
        r.add(Word(), 1);
        return r;
    }
    const TSlice& s = slice(multiset_of(a));
    int i = s.index.at(a);
    for (std::size_t j = 0; j < s.words.size(); ++j) r.add(s.words[j], s.t[i][j]);
    return r;
}

Tensor TCoefficients::lower(const Word& a) const { return from_plus(lower_element(a)); }

Tensor TCoefficients::upper(const Word& g) const {
    Tensor r(1);
    if (g.empty()) return Tensor::unit(1);
    const TSlice& s = slice(multiset_of(g));
    int j = s.index.at(g);
    for (std::size_t i = 0; i < s.words.size(); ++i)
        if (!s.t[i][j].is_zero()) r.add(minus_word(s.words[i], s.t[i][j]));
    return r;
}

Tensor TCoefficients::body(int grade) const {
    if (grade == 0) return Tensor::unit(2);
    Tensor r(2);
    for (auto& ms : multisets(spec_.n(), grade)) {
        const TSlice& s = slice(ms);
        for (std::size_t i = 0; i < s.words.size(); ++i)
            for (std::size_t j = 0; j < s.words.size(); ++j) {
                if (s.t[i][j].is_zero()) continue;
                SlotKey a, b;
                a.minus = s.words[i];
                b.plus = s.words[j];
                r.add({a, b}, s.t[i][j]);
            }
    }
    return r;
}

Tensor TCoefficients::body_upto(int grade) const {
    Tensor r(2);
    for (int g = 0; g <= grade; ++g) r.add(body(g));
    return r;
}

// ---------------------------------------------------------------------------
// recursion and Yang-Baxter residuals

namespace {

Tensor tagged(const AlgebraSpec& spec, const Tag& t) { return cartan_tag(spec, t); }

} // namespace

std::vector<RecursionResidual> verify_recursion(const TCoefficients& t, int l) {
    const AlgebraSpec& spec = t.spec();
    std::vector<RecursionResidual> out;
    for (auto& a : all_words(spec.n(), l)) {
        Tensor ta = t.lower(a);
        for (int g = 0; g < spec.n(); ++g) {
            Tensor em = gen_minus(g);
            Tensor r = mul(spec, ta, em) - mul(spec, em, ta);
            if ((unsigned char)a.front() == g)
                r = r - mul(spec, tagged(spec, tag_left(g)), t.lower(a.substr(1)));
            if ((unsigned char)a.back() == g)
                r = r + mul(spec, t.lower(a.substr(0, l - 1)), tagged(spec, tag_right(g, -1)));
            if (!r.is_zero()) out.push_back({a, g, r});
        }
    }
    return out;
}

std::vector<RecursionResidual> verify_recursion_upper(const TCoefficients& t, int l) {
    const AlgebraSpec& spec = t.spec();
    std::vector<RecursionResidual> out;
    for (auto& a : all_words(spec.n(), l)) {
        Tensor ta = t.upper(a);
        for (int g = 0; g < spec.n(); ++g) {
            Tensor ep = gen_plus(g);
            Tensor r = mul(spec, ep, ta) - mul(spec, ta, ep);
            if ((unsigned char)a.back() == g)
                r = r - mul(spec, t.upper(a.substr(0, l - 1)), tagged(spec, tag_left(g)));
            if ((unsigned char)a.front() == g)
                r = r + mul(spec, tagged(spec, tag_right(g, -1)), t.upper(a.substr(1)));
            if (!r.is_zero()) out.push_back({a, g, r});
        }
    }
    return out;
}

Tensor yb_component(const TCoefficients& t, const Word& alpha, const Word& gamma) {
    const AlgebraSpec& spec = t.spec();
    int l = (int)alpha.size(), n = (int)gamma.size();
    Tensor P(1);
    for (int m = 0; m <= std::min(l, n); ++m) {
        // first term
        {
            Scalar c = t.coeff(alpha.substr(l - m), gamma.substr(0, m));
            if (!c.is_zero()) {
                Tag sigma;
                for (int i = 0; i < m; ++i) sigma.mu[(unsigned char)gamma[i]] -= 1;
                Tensor x = mul(spec, t.lower(alpha.substr(0, l - m)), tagged(spec, sigma));
                x = mul(spec, x, t.upper(gamma.substr(m)));
                P.add(x, c);
            }
        }
        {
            Scalar c = t.coeff(alpha.substr(0, m), gamma.substr(n - m));
            if (!c.is_zero()) {
                Tag tau;
                for (int i = 0; i < m; ++i) tau.nu[(unsigned char)alpha[i]] += 1;
                Tensor x = mul(spec, t.upper(gamma.substr(0, n - m)), tagged(spec, tau));
                x = mul(spec, x, t.lower(alpha.substr(m)));
                P.add(x, -c);
            }
        }
    }
    return P;
}

std::vector<YBResidual> yb_grade_residual(const TCoefficients& t, int l, int n) {
    std::vector<YBResidual> out;
    for (auto& a : all_words(t.spec().n(), l))
        for (auto& g : all_words(t.spec().n(), n)) {
            Tensor r = yb_component(t, a, g);
            if (!r.is_zero()) out.push_back({a, g, r});
        }
    return out;
}

Tag tag_phi_left(const std::array<int, kMaxGens>& w, int sign) {
    Tag t;
    for (int i = 0; i < kMaxGens; ++i) t.nu[i] = (int8_t)(sign * w[i]);
    return t;
}

Tag tag_phi_right(const std::array<int, kMaxGens>& w, int sign) {
    Tag t;
    for (int i = 0; i < kMaxGens; ++i) t.mu[i] = (int8_t)(sign * w[i]);
    return t;
}

SlotKey slot_times_tag(const AlgebraSpec& spec, const SlotKey& k, const Tag& t, Scalar& coef) {
    if (t.is_zero()) return k;
    SlotKey r = k;
    for (char ch : k.plus) coef = coef * spec.character(t, (unsigned char)ch).inverse();
    r.tag = spec.canonical(k.tag + t);
    return r;
}

SlotKey tag_times_slot(const AlgebraSpec& spec, const Tag& t, const SlotKey& k, Scalar& coef) {
    if (t.is_zero()) return k;
    SlotKey r = k;
    for (char ch : k.minus) coef = coef * spec.character(t, (unsigned char)ch).inverse();
    r.tag = spec.canonical(k.tag + t);
    return r;
}

Tensor conj_r0(const AlgebraSpec& spec, const Tensor& x, int i, int j) {
    Tensor r(x.slots());
    for (auto& [k, c] : x.terms()) {
        auto wi = root_content(k[i]);
        auto wj = root_content(k[j]);
        Scalar coef = c;
        Tensor::Key nk = k;
        nk[i] = slot_times_tag(spec, k[i], tag_phi_right(wj, -1), coef);
        nk[j] = tag_times_slot(spec, tag_phi_left(wi, -1), k[j], coef);
        r.add(nk, coef);
    }
    return r;
}

namespace {

int minus_len(const SlotKey& k) { return (int)k.minus.size(); }
int plus_len(const SlotKey& k) { return (int)k.plus.size(); }

} // namespace

Tensor yb_full_residual(const TCoefficients& t, int D) {
    const AlgebraSpec& spec = t.spec();
    std::vector<Tensor> B;
    for (int g = 0; g <= D; ++g) B.push_back(t.body(g));
    auto in3 = [&](const Tensor& x, int a, int b) { return embed(x, 3, {a, b}); };
    Tensor res(3);
    for (int l12 = 0; l12 <= D; ++l12)
        for (int l13 = 0; l12 + l13 <= D; ++l13)
            for (int l23 = 0; l13 + l23 <= D; ++l23) {
                Tensor b12 = in3(B[l12], 0, 1), b13 = in3(B[l13], 0, 2), b23 = in3(B[l23], 1, 2);
                // R12 R13 R23 side
                Tensor x = conj_r0(spec, conj_r0(spec, b12, 0, 2), 1, 2);
                Tensor y = conj_r0(spec, b13, 1, 2);
                Tensor lhs = mul(spec, mul(spec, x, y), b23);
                // R23 R13 R12 side
                Tensor u = conj_r0(spec, conj_r0(spec, b23, 0, 2), 0, 1);
                Tensor v = conj_r0(spec, b13, 0, 1);
                Tensor rhs = mul(spec, mul(spec, u, v), b12);
                res.add(lhs);
                res.add(rhs, -1);
            }
    return res.filtered(
        [&](const Tensor::Key& k) { return minus_len(k[0]) <= D && plus_len(k[2]) <= D; });
}

// ---------------------------------------------------------------------------
// Hopf structure

Tensor generator(const AlgebraSpec& spec, const Generator& g) {
    (void)spec;
    switch (g.kind) {
    case Generator::Plus: return gen_plus(g.index);
    case Generator::Minus: return gen_minus(g.index);
    case Generator::H: return cartan_h(g.index);
    }
    return Tensor(1);
}

namespace {

Tensor two(const Tensor& a, const Tensor& b) { return tensor_product(a, b); }

Tensor tag_coproduct(const AlgebraSpec& spec, const Tag& t) {
    return two(cartan_tag(spec, t), cartan_tag(spec, t));
}

} // namespace

Tensor coproduct(const AlgebraSpec& spec, const Generator& g) {
    Tensor one = Tensor::unit(1);
    switch (g.kind) {
    case Generator::Plus:
        return two(one, gen_plus(g.index)) +
               two(gen_plus(g.index), cartan_tag(spec, tag_left(g.index)));
    case Generator::Minus:
        return two(cartan_tag(spec, tag_right(g.index, -1)), gen_minus(g.index)) +
               two(gen_minus(g.index), one);
    case Generator::H: return two(cartan_h(g.index), one) + two(one, cartan_h(g.index));
    }
    return Tensor(2);
}

Tensor antipode(const AlgebraSpec& spec, const Generator& g) {
    switch (g.kind) {
    case Generator::Plus:
        return mul(spec, gen_plus(g.index), cartan_tag(spec, tag_left(g.index, -1))).scaled(-1);
    case Generator::Minus:
        return mul(spec, cartan_tag(spec, tag_right(g.index)), gen_minus(g.index)).scaled(-1);
    case Generator::H: return cartan_h(g.index).scaled(-1);
    }
    return Tensor(1);
}

Scalar counit(const AlgebraSpec&, const Generator&) { return Scalar(); }

Tensor coproduct(const AlgebraSpec& spec, const Tensor& x) {
    Tensor r(2);
    for (auto& [k, c] : x.terms()) {
        const SlotKey& s = k[0];
        Tensor acc = Tensor::unit(2);
        for (char ch : s.minus)
            acc = mul(spec, acc, coproduct(spec, Generator{Generator::Minus, (unsigned char)ch}));
        if (!s.tag.is_zero()) acc = mul(spec, acc, tag_coproduct(spec, s.tag));
        for (int a = 0; a < kMaxCartan; ++a)
            for (int e = 0; e < s.h.e[a]; ++e)
                acc = mul(spec, acc, coproduct(spec, Generator{Generator::H, a}));
        for (char ch : s.plus)
            acc = mul(spec, acc, coproduct(spec, Generator{Generator::Plus, (unsigned char)ch}));
        r.add(acc, c);
    }
    return r;
}

Tensor antipode(const AlgebraSpec& spec, const Tensor& x) {
    Tensor r(1);
    for (auto& [k, c] : x.terms()) {
        const SlotKey& s = k[0];
        Tensor acc = Tensor::unit(1);
        for (auto it = s.plus.rbegin(); it != s.plus.rend(); ++it)
            acc = mul(spec, acc, antipode(spec, Generator{Generator::Plus, (unsigned char)*it}));
        for (int a = kMaxCartan - 1; a >= 0; --a)
            for (int e = 0; e < s.h.e[a]; ++e)
                acc = mul(spec, acc, antipode(spec, Generator{Generator::H, a}));
        if (!s.tag.is_zero()) acc = mul(spec, acc, cartan_tag(spec, -s.tag));
        for (auto it = s.minus.rbegin(); it != s.minus.rend(); ++it)
            acc = mul(spec, acc, antipode(spec, Generator{Generator::Minus, (unsigned char)*it}));
        r.add(acc, c);
    }
    return r;
}

Scalar counit(const Tensor& x) {
    Scalar r;
    for (auto& [k, c] : x.terms()) {
        bool scalar = true;
        for (auto& s : k)
            if (!s.minus.empty() || !s.plus.empty() || !s.h.is_zero()) scalar = false;
        if (scalar) r += c;
    }
    return r;
}

Tensor coproduct_at(const AlgebraSpec& spec, const Tensor& x, int slot) {
    Tensor r(x.slots() + 1);
    for (auto& [k, c] : x.terms()) {
        Tensor d = coproduct(spec, Tensor::term({k[slot]}, 1));
        for (auto& [dk, dc] : d.terms()) {
            Tensor::Key nk;
            for (int i = 0; i < x.slots(); ++i) {
                if (i == slot) {
                    nk.push_back(dk[0]);
                    nk.push_back(dk[1]);
                } else {
                    nk.push_back(k[i]);
                }
            }
            r.add(nk, c * dc);
        }
    }
    return r;
}

Tensor multiply_slots(const AlgebraSpec& spec, const Tensor& x) {
    Tensor r(1);
    for (auto& [k, c] : x.terms()) {
        Tensor acc = Tensor::term({k[0]}, c);
        for (int i = 1; i < x.slots(); ++i) acc = mul(spec, acc, Tensor::term({k[i]}, 1));
        r.add(acc);
    }
    return r;
}

Tensor flip(const Tensor& x) { return permute(x, {1, 0}); }

std::vector<NamedResidual> coproduct_homomorphism_residuals(const AlgebraSpec& spec) {
    std::vector<NamedResidual> out;
    auto push = [&](std::string name, Tensor r) {
        if (!r.is_zero()) out.push_back({std::move(name), std::move(r)});
    };
    int N = spec.n();
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            Tensor da = coproduct(spec, Generator{Generator::Plus, a});
            Tensor db = coproduct(spec, Generator{Generator::Minus, b});
            Tensor r = mul(spec, da, db) - mul(spec, db, da);
            if (a == b)
                r = r - tag_coproduct(spec, tag_left(a)) + tag_coproduct(spec, tag_right(a, -1));
            push("[D(e_" + spec.labels()[a] + "),D(e_-" + spec.labels()[b] + ")]", r);
        }
    // tags commute with generators up to their character
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int side = 0; side < 2; ++side) {
                Tag t = side == 0 ? tag_left(a) : tag_right(a);
                Tensor dt = tag_coproduct(spec, t);
                for (int sgn = 0; sgn < 2; ++sgn) {
                    Generator g{sgn == 0 ? Generator::Plus : Generator::Minus, b};
                    Tensor dg = coproduct(spec, g);
                    Scalar chi = spec.character(t, b);
                    if (sgn == 1) chi = chi.inverse();
                    Tensor r = mul(spec, dt, dg) - mul(spec, dg, dt).scaled(chi);
                    push("tag relation", r);
                }
            }
    for (int c = 0; c < spec.m(); ++c)
        for (int b = 0; b < N; ++b)
            for (int sgn = 0; sgn < 2; ++sgn) {
                Generator g{sgn == 0 ? Generator::Plus : Generator::Minus, b};
                Tensor dh = coproduct(spec, Generator{Generator::H, c});
                Tensor dg = coproduct(spec, g);
                mpq_class w = spec.weight(c, b) * (sgn == 0 ? 1 : -1);
                Tensor r = mul(spec, dh, dg) - mul(spec, dg, dh) - dg.scaled(Scalar(w));
                push("[D(H),D(e)]", r);
            }
    return out;
}

std::vector<NamedResidual> antipode_residuals(const AlgebraSpec& spec) {
    std::vector<NamedResidual> out;
    std::vector<Generator> gens;
    for (int a = 0; a < spec.n(); ++a) {
        gens.push_back({Generator::Plus, a});
        gens.push_back({Generator::Minus, a});
    }
    for (int c = 0; c < spec.m(); ++c) gens.push_back({Generator::H, c});
    for (auto& g : gens) {
        Tensor d = coproduct(spec, g);
        // m (id x S) D
        Tensor left(1), right(1);
        for (auto& [k, c] : d.terms()) {
            left.add(mul(spec, Tensor::term({k[0]}, c), antipode(spec, Tensor::term({k[1]}, 1))));
            right.add(mul(spec, antipode(spec, Tensor::term({k[0]}, c)), Tensor::term({k[1]}, 1)));
        }
        Scalar eps = counit(spec, g);
        Tensor target = Tensor::unit(1).scaled(eps);
        if (!(left - target).is_zero()) out.push_back({"m(id x S)D", left - target});
        if (!(right - target).is_zero()) out.push_back({"m(S x id)D", right - target});
    }
    return out;
}

std::vector<NamedResidual> coassociativity_residuals(const AlgebraSpec& spec) {
    std::vector<NamedResidual> out;
    std::vector<Generator> gens;
    for (int a = 0; a < spec.n(); ++a) {
        gens.push_back({Generator::Plus, a});
        gens.push_back({Generator::Minus, a});
    }
    for (int c = 0; c < spec.m(); ++c) gens.push_back({Generator::H, c});
    for (auto& g : gens) {
        Tensor d = coproduct(spec, g);
        Tensor r = coproduct_at(spec, d, 0) - coproduct_at(spec, d, 1);
        if (!r.is_zero()) out.push_back({"coassociativity", r});
    }
    return out;
}

Tensor intertwiner_residual(const TCoefficients& t, const Generator& g, int D) {
    const AlgebraSpec& spec = t.spec();
    Tensor d = coproduct(spec, g);
    Tensor dop = flip(d);
    Tensor B = t.body_upto(D);
    Tensor r = mul(spec, conj_r0(spec, d, 0, 1), B) - mul(spec, B, dop);
    return r.filtered([&](const Tensor::Key& k) {
        return (int)k[1].plus.size() <= D && (int)k[0].minus.size() <= D;
    });
}

} // namespace qgf
