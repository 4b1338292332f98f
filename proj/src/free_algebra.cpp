#include "qgf/free_algebra.hpp"

#include <algorithm>
#include <numeric>

namespace qgf {

Word word(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.push_back((char)l);
    return w;
}

std::string word_str(const Word& w, const std::vector<std::string>& labels) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += labels.at((unsigned char)w[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Tag / HExp

bool Tag::is_zero() const {
    for (int i = 0; i < kMaxGens; ++i)
        if (nu[i] || mu[i]) return false;
    return true;
}

Tag Tag::operator+(const Tag& o) const {
    Tag r;
    for (int i = 0; i < kMaxGens; ++i) {
        r.nu[i] = (int8_t)(nu[i] + o.nu[i]);
        r.mu[i] = (int8_t)(mu[i] + o.mu[i]);
    }
    return r;
}

Tag Tag::operator-() const {
    Tag r;
    for (int i = 0; i < kMaxGens; ++i) {
        r.nu[i] = (int8_t)-nu[i];
        r.mu[i] = (int8_t)-mu[i];
    }
    return r;
}

Tag tag_left(int alpha, int sign) {
    Tag t;
    t.nu[alpha] = (int8_t)sign;
    return t;
}

Tag tag_right(int alpha, int sign) {
    Tag t;
    t.mu[alpha] = (int8_t)sign;
    return t;
}

bool HExp::is_zero() const {
    for (auto x : e)
        if (x) return false;
    return true;
}

// ---------------------------------------------------------------------------
// integer lattice helpers

namespace {

using IVec = std::vector<long>;

// Row echelon (Hermite) form over the first ncols columns, in place.
// Returns pivot columns of the nonzero rows; rows are reordered so that the
// echelon rows come first.
std::vector<int> hermite(std::vector<IVec>& rows, int ncols, bool reduce_above) {
    std::vector<int> piv;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (best == rows.size() || std::labs(rows[i][c]) < std::labs(rows[best][c])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (!rows[i][c]) continue;
                long f = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
                if (rows[i][c]) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& v : rows[r]) v = -v;
            if (reduce_above) {
                for (std::size_t i = 0; i < r; ++i) {
                    long f = rows[i][c] / rows[r][c];
                    if (rows[i][c] - f * rows[r][c] < 0) --f;
                    if (f)
                        for (std::size_t j = 0; j < rows[i].size(); ++j)
                            rows[i][j] -= f * rows[r][j];
                }
            }
            piv.push_back(c);
            ++r;
        }
    }
    return piv;
}

} // namespace

// ---------------------------------------------------------------------------
// AlgebraSpec

AlgebraSpec::AlgebraSpec(std::vector<std::string> gen_labels,
                         std::vector<std::string> cartan_labels,
                         std::vector<std::vector<Scalar>> x,
                         std::vector<std::vector<mpq_class>> weights)
    : labels_(std::move(gen_labels)), cartan_(std::move(cartan_labels)), x_(std::move(x)),
      w_(std::move(weights)) {
    init();
}

void AlgebraSpec::init() {
    int N = n();
    if (N < 1 || N > kMaxGens) throw InvalidInput("generator count must be in 1..8");
    if ((int)cartan_.size() > kMaxCartan) throw InvalidInput("at most 4 Cartan labels");
    if ((int)x_.size() != N) throw InvalidInput("phi must be total on N x N");
    for (auto& row : x_)
        if ((int)row.size() != N) throw InvalidInput("phi must be total on N x N");
    if (w_.empty()) w_.assign(cartan_.size(), std::vector<mpq_class>(N, 0));
    if (w_.size() != cartan_.size()) throw InvalidInput("weights must be total on M x N");
    for (auto& row : w_)
        if ((int)row.size() != N) throw InvalidInput("weights must be total on M x N");
    xinv_.assign(N, std::vector<Scalar>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (x_[a][b].is_zero()) throw InvalidInput("exponential parameter is zero");
            xinv_[a][b] = x_[a][b].inverse();
        }

    monomial_chars_ = true;
    for (auto& row : x_)
        for (auto& s : row)
            if (!s.is_monomial() || s.numerator().lead().c != 1) monomial_chars_ = false;
    lattice_.clear();
    pivots_.clear();
    if (!monomial_chars_) return;

    // tag coordinates: nu_0..nu_{N-1}, mu_0..mu_{N-1}
    int V = kMaxVars;
    int ncols = N * V;
    std::vector<IVec> rows;
    for (int t = 0; t < 2 * N; ++t) {
        IVec row(ncols + 2 * N, 0);
        for (int b = 0; b < N; ++b) {
            const Mono& m = (t < N) ? x_[t][b].numerator().lead().m
                                    : x_[b][t - N].numerator().lead().m;
            for (int v = 0; v < V; ++v) row[b * V + v] = m[v];
        }
        row[ncols + t] = 1;
        rows.push_back(row);
    }
    auto piv = hermite(rows, ncols, false);
    std::vector<IVec> kernel;
    for (std::size_t i = piv.size(); i < rows.size(); ++i)
        kernel.emplace_back(rows[i].begin() + ncols, rows[i].end());
    auto kp = hermite(kernel, 2 * N, true);
    kernel.resize(kp.size());
    for (auto& k : kernel) lattice_.emplace_back(k.begin(), k.end());
    pivots_ = kp;
}

AlgebraSpec AlgebraSpec::generic(int n, const std::string& prefix, int first_label) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(first_label + i));
    return generic(labels, prefix);
}

AlgebraSpec AlgebraSpec::generic(const std::vector<std::string>& labels,
                                 const std::string& prefix) {
    int N = (int)labels.size();
    bool short_labels = true;
    for (auto& l : labels)
        if (l.size() != 1) short_labels = false;
    std::vector<std::vector<Scalar>> x(N, std::vector<Scalar>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::string name = short_labels ? prefix + labels[a] + labels[b]
                                            : prefix + "_" + labels[a] + "_" + labels[b];
            x[a][b] = Scalar::variable(name);
        }
    return AlgebraSpec(labels, {}, x, {});
}

AlgebraSpec AlgebraSpec::with_surface(const Substitution& sub) const {
    std::vector<std::vector<Scalar>> x = x_;
    for (auto& row : x)
        for (auto& s : row) s = sub.apply(s);
    AlgebraSpec r(labels_, cartan_, x, w_);
    r.surface_ = surface_.then(sub);
    return r;
}

int AlgebraSpec::index_of(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
        if (labels_[i] == label) return i;
    throw InvalidInput("unknown generator label '" + label + "'");
}

Scalar AlgebraSpec::character(const Tag& t, int b) const {
    Scalar r(1);
    for (int a = 0; a < n(); ++a) {
        if (t.nu[a]) r = r * (t.nu[a] > 0 ? x_[a][b] : xinv_[a][b]).pow(std::abs(t.nu[a]));
        if (t.mu[a]) r = r * (t.mu[a] > 0 ? x_[b][a] : xinv_[b][a]).pow(std::abs(t.mu[a]));
    }
    return r;
}

bool AlgebraSpec::tag_trivial(const Tag& t) const {
    for (int b = 0; b < n(); ++b)
        if (!character(t, b).is_one()) return false;
    return true;
}

Tag AlgebraSpec::canonical(const Tag& t) const {
    if (lattice_.empty()) return t;
    int N = n();
    std::vector<long> v(2 * N);
    for (int i = 0; i < N; ++i) {
        v[i] = t.nu[i];
        v[N + i] = t.mu[i];
    }
    for (std::size_t r = 0; r < lattice_.size(); ++r) {
        int p = pivots_[r];
        long d = lattice_[r][p];
        long f = v[p] / d;
        if (v[p] - f * d < 0) --f;
        if (f)
            for (int j = 0; j < 2 * N; ++j) v[j] -= f * lattice_[r][j];
    }
    Tag out;
    for (int i = 0; i < N; ++i) {
        if (std::labs(v[i]) > 127 || std::labs(v[N + i]) > 127)
            throw Error("Internal", "tag exponent overflow");
        out.nu[i] = (int8_t)v[i];
        out.mu[i] = (int8_t)v[N + i];
    }
    return out;
}

const std::vector<AlgebraSpec::Reordered>& AlgebraSpec::reorder(const Word& plus,
                                                                const Word& minus) const {
    auto key = std::make_pair(plus, minus);
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->reorder.find(key);
        if (it != cache_->reorder.end()) return *it->second;
    }
    auto v = std::make_unique<std::vector<Reordered>>(compute_reorder(plus, minus));
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto [it, ok] = cache_->reorder.emplace(key, std::move(v));
    return *it->second;
}

namespace {

struct RKey {
    Word minus;
    Tag tag;
    Word plus;
    auto operator<=>(const RKey&) const = default;
};

} // namespace

std::vector<AlgebraSpec::Reordered> AlgebraSpec::compute_reorder(const Word& P,
                                                                 const Word& Q) const {
    if (P.empty()) return {{Scalar(1), Q, Tag{}, Word()}};
    if (Q.empty()) return {{Scalar(1), Word(), Tag{}, P}};
    std::map<RKey, Scalar> acc;
    auto put = [&](const Word& m, const Tag& t, const Word& p, const Scalar& c) {
        if (c.is_zero()) return;
        RKey k{m, canonical(t), p};
        auto it = acc.find(k);
        if (it == acc.end()) acc.emplace(k, c);
        else {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    };
    if (P.size() == 1) {
        int a = (unsigned char)P[0];
        int b = (unsigned char)Q[0];
        Word rest = Q.substr(1);
        for (auto& r : reorder(P, rest)) put(Word(1, (char)b) + r.minus, r.tag, r.plus, r.c);
        if (a == b) {
            // (e^{phi(a,.)} - e^{-phi(.,a)}) e_{-rest}
            for (int s = 0; s < 2; ++s) {
                Tag k = s == 0 ? tag_left(a) : tag_right(a, -1);
                Scalar f(1);
                for (char ch : rest) f = f * character(k, (unsigned char)ch).inverse();
                put(rest, k, Word(), s == 0 ? f : -f);
            }
        }
    } else {
        Word head = P.substr(0, 1);
        Word tail = P.substr(1);
        for (auto& x : reorder(tail, Q)) {
            for (auto& y : reorder(head, x.minus)) {
                // y.minus y.tag y.plus x.tag x.plus ; move x.tag left past y.plus
                Scalar f = x.c * y.c;
                for (char ch : y.plus) f = f * character(x.tag, (unsigned char)ch).inverse();
                put(y.minus, y.tag + x.tag, y.plus + x.plus, f);
            }
        }
    }
    std::vector<Reordered> out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc) out.push_back({c, k.minus, k.tag, k.plus});
    return out;
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement AlgebraElement::unit(Sign s) { return word(s, Word(), 1); }

AlgebraElement AlgebraElement::word(Sign s, const Word& w, const Scalar& c) {
    AlgebraElement e(s);
    e.add(w, c);
    return e;
}

Scalar AlgebraElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

void AlgebraElement::add(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) terms_.emplace(w, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (o.sign_ != sign_) throw MixedSignAlgebras();
    AlgebraElement r = *this;
    for (auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return *this + o.scaled(-1);
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    return multiply(*this, o);
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement r(sign_);
    if (c.is_zero()) return r;
    for (auto& [w, x] : terms_) r.terms_.emplace(w, x * c);
    return r;
}

AlgebraElement AlgebraElement::substituted(const Substitution& s) const {
    AlgebraElement r(sign_);
    for (auto& [w, x] : terms_) r.add(w, s.apply(x));
    return r;
}

std::optional<int> AlgebraElement::grade() const {
    std::optional<int> g;
    for (auto& [w, c] : terms_) {
        if (g && *g != (int)w.size()) return std::nullopt;
        g = (int)w.size();
    }
    return g ? g : std::optional<int>(0);
}

std::string AlgebraElement::str(const AlgebraSpec& spec) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Word, Scalar>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
        return a.first.size() != b.first.size() ? a.first.size() < b.first.size()
                                                : a.first < b.first;
    });
    std::string s;
    const char* e = sign_ == Sign::Plus ? "e" : "e-";
    for (auto& [w, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        if (!w.empty()) s += "*" + std::string(e) + spec.word_str(w);
    }
    return s;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.sign() != b.sign()) throw MixedSignAlgebras();
    AlgebraElement r(a.sign());
    for (auto& [u, x] : a.terms())
        for (auto& [v, y] : b.terms()) r.add(u + v, x * y);
    return r;
}

AlgebraElement apply_derivative(const AlgebraSpec& spec, Dir dir, int gamma,
                                const AlgebraElement& x) {
    AlgebraElement r(x.sign());
    bool plus = x.sign() == Sign::Plus;
    for (auto& [w, c] : x.terms()) {
        int n = (int)w.size();
        for (int j = 0; j < n; ++j) {
            if ((unsigned char)w[j] != gamma) continue;
            Scalar f = c;
            if (dir == Dir::Left) {
                for (int i = 0; i < j; ++i) {
                    int a = (unsigned char)w[i];
                    f = f * (plus ? spec.xinv(gamma, a) : spec.xinv(a, gamma));
                }
            } else {
                for (int i = j + 1; i < n; ++i) {
                    int a = (unsigned char)w[i];
                    f = f * (plus ? spec.xinv(a, gamma) : spec.xinv(gamma, a));
                }
            }
            r.add(w.substr(0, j) + w.substr(j + 1), f);
        }
    }
    return r;
}

AlgebraElement constant_operator_apply(const AlgebraSpec& spec, const AlgebraElement& c,
                                       const AlgebraElement& x) {
    if (c.sign() != x.sign()) throw MixedSignAlgebras();
    AlgebraElement r(x.sign());
    for (auto& [w, cw] : c.terms()) {
        AlgebraElement y = x;
        for (int i = (int)w.size() - 1; i >= 0 && !y.is_zero(); --i)
            y = apply_derivative(spec, Dir::Left, (unsigned char)w[i], y);
        r = r + y.scaled(cw);
    }
    return r;
}

AlgebraElement closedness(const AlgebraSpec& spec, const AlgebraElement& c,
                          const std::vector<AlgebraElement>& y) {
    AlgebraElement r(c.sign());
    for (auto& [w, cw] : c.terms()) {
        if (w.empty()) continue;
        AlgebraElement v = y.at((unsigned char)w.back());
        for (int i = (int)w.size() - 2; i >= 0 && !v.is_zero(); --i)
            v = apply_derivative(spec, Dir::Left, (unsigned char)w[i], v);
        r = r + v.scaled(cw);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Tensor

Tensor Tensor::unit(int slots) { return term(Key(slots), 1); }

Tensor Tensor::term(const Key& k, const Scalar& c) {
    Tensor t((int)k.size());
    t.add(k, c);
    return t;
}

void Tensor::add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) terms_.emplace(k, c);
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Tensor::add(const Tensor& t, const Scalar& c) {
    if (t.slots_ != slots_ && !t.is_zero())
        throw InvalidInput("adding tensors with different slot counts");
    for (auto& [k, x] : t.terms_) add(k, x * c);
}

Scalar Tensor::coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
}

Tensor Tensor::operator+(const Tensor& o) const {
    Tensor r = *this;
    r.add(o);
    return r;
}

Tensor Tensor::operator-(const Tensor& o) const {
    Tensor r = *this;
    r.add(o, -1);
    return r;
}

Tensor Tensor::scaled(const Scalar& c) const {
    Tensor r(slots_);
    if (c.is_zero()) return r;
    for (auto& [k, x] : terms_) r.terms_.emplace(k, x * c);
    return r;
}

Tensor Tensor::substituted(const Substitution& s) const {
    Tensor r(slots_);
    for (auto& [k, x] : terms_) r.add(k, s.apply(x));
    return r;
}

namespace {

std::string slot_str(const AlgebraSpec& spec, const SlotKey& k) {
    std::string s;
    if (!k.minus.empty()) s += "e-" + spec.word_str(k.minus);
    if (!k.tag.is_zero()) {
        if (!s.empty()) s += " ";
        std::string nu, mu;
        for (int i = 0; i < spec.n(); ++i) {
            nu += (i ? "," : "") + std::to_string(k.tag.nu[i]);
            mu += (i ? "," : "") + std::to_string(k.tag.mu[i]);
        }
        s += "K[" + nu + "|" + mu + "]";
    }
    if (!k.h.is_zero()) {
        for (int a = 0; a < kMaxCartan; ++a)
            if (k.h.e[a]) {
                if (!s.empty()) s += " ";
                s += "H" + spec.cartan_labels().at(a);
                if (k.h.e[a] > 1) s += "^" + std::to_string(k.h.e[a]);
            }
    }
    if (!k.plus.empty()) {
        if (!s.empty()) s += " ";
        s += "e" + spec.word_str(k.plus);
    }
    return s.empty() ? "1" : s;
}

} // namespace

std::string Tensor::str(const AlgebraSpec& spec) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : terms_) {
        if (!s.empty()) s += "\n";
        s += "(" + c.str() + ")";
        for (int i = 0; i < slots_; ++i) s += (i ? " (x) " : " * ") + slot_str(spec, k[i]);
    }
    return s;
}

namespace {

struct SlotProduct {
    Scalar c;
    SlotKey k;
};

// Expands prod_a (H_a + d_a)^{e_a}.
std::vector<std::pair<mpq_class, HExp>> shift_h(const HExp& h, const std::vector<mpq_class>& d) {
    std::vector<std::pair<mpq_class, HExp>> out{{mpq_class(1), HExp{}}};
    for (int a = 0; a < kMaxCartan; ++a) {
        int e = h.e[a];
        if (!e) continue;
        mpq_class da = a < (int)d.size() ? d[a] : mpq_class(0);
        std::vector<std::pair<mpq_class, HExp>> next;
        for (auto& [c, hx] : out) {
            mpz_class binom = 1;
            for (int k = e; k >= 0; --k) {
                // C(e,k) da^(e-k) H^k
                mpz_class bk;
                mpz_bin_uiui(bk.get_mpz_t(), e, k);
                mpq_class p = 1;
                for (int i = 0; i < e - k; ++i) p *= da;
                mpq_class coef = c * mpq_class(bk) * p;
                if (coef == 0) continue;
                HExp n = hx;
                n.e[a] = (uint8_t)k;
                next.push_back({coef, n});
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<mpq_class> word_weight(const AlgebraSpec& spec, const Word& w, int sign) {
    std::vector<mpq_class> d(spec.m(), 0);
    for (char ch : w)
        for (int a = 0; a < spec.m(); ++a) d[a] += sign * spec.weight(a, (unsigned char)ch);
    return d;
}

HExp h_mul(const HExp& a, const HExp& b) {
    HExp r;
    for (int i = 0; i < kMaxCartan; ++i) r.e[i] = (uint8_t)(a.e[i] + b.e[i]);
    return r;
}

std::vector<SlotProduct> slot_mul(const AlgebraSpec& spec, const SlotKey& A, const SlotKey& B) {
    std::vector<SlotProduct> out;
    if (A.plus.empty() && B.minus.empty()) {
        SlotKey k{A.minus, spec.canonical(A.tag + B.tag), h_mul(A.h, B.h), A.plus + B.plus};
        out.push_back({Scalar(1), std::move(k)});
        return out;
    }
    for (auto& r : spec.reorder(A.plus, B.minus)) {
        Scalar f = r.c;
        if (!A.tag.is_zero())
            for (char ch : r.minus) f = f * spec.character(A.tag, (unsigned char)ch).inverse();
        if (!B.tag.is_zero())
            for (char ch : r.plus) f = f * spec.character(B.tag, (unsigned char)ch).inverse();
        Tag t = spec.canonical(A.tag + r.tag + B.tag);
        Word minus = A.minus + r.minus;
        Word plus = r.plus + B.plus;
        if (A.h.is_zero() && B.h.is_zero()) {
            out.push_back({f, SlotKey{minus, t, HExp{}, plus}});
            continue;
        }
        auto ha = shift_h(A.h, word_weight(spec, r.minus, -1));
        auto hb = shift_h(B.h, word_weight(spec, r.plus, -1));
        for (auto& [ca, xa] : ha)
            for (auto& [cb, xb] : hb)
                out.push_back({f * Scalar(ca * cb), SlotKey{minus, t, h_mul(xa, xb), plus}});
    }
    return out;
}

} // namespace

Tensor mul(const AlgebraSpec& spec, const Tensor& a, const Tensor& b) {
    if (a.slots() != b.slots()) throw InvalidInput("slot count mismatch in product");
    int S = a.slots();
    Tensor r(S);
    std::vector<std::vector<SlotProduct>> parts(S);
    for (auto& [ka, ca] : a.terms()) {
        for (auto& [kb, cb] : b.terms()) {
            bool zero = false;
            for (int s = 0; s < S; ++s) {
                parts[s] = slot_mul(spec, ka[s], kb[s]);
                if (parts[s].empty()) zero = true;
            }
            if (zero) continue;
            Scalar c0 = ca * cb;
            std::vector<std::size_t> idx(S, 0);
            Tensor::Key key(S);
            for (;;) {
                Scalar c = c0;
                for (int s = 0; s < S; ++s) {
                    key[s] = parts[s][idx[s]].k;
                    if (!parts[s][idx[s]].c.is_one()) c = c * parts[s][idx[s]].c;
                }
                r.add(key, c);
                int s = S - 1;
                while (s >= 0 && ++idx[s] == parts[s].size()) idx[s--] = 0;
                if (s < 0) break;
            }
        }
    }
    return r;
}

Tensor mul(const AlgebraSpec& spec, const Tensor& a, const Tensor& b, const Tensor& c) {
    return mul(spec, mul(spec, a, b), c);
}

Tensor tensor_product(const Tensor& a, const Tensor& b) {
    Tensor r(a.slots() + b.slots());
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            Tensor::Key k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            r.add(k, ca * cb);
        }
    return r;
}

Tensor permute(const Tensor& t, const std::vector<int>& perm) {
    Tensor r((int)perm.size());
    for (auto& [k, c] : t.terms()) {
        Tensor::Key nk(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) nk[i] = k[perm[i]];
        r.add(nk, c);
    }
    return r;
}

Tensor embed(const Tensor& t, int slots, const std::vector<int>& positions) {
    Tensor r(slots);
    for (auto& [k, c] : t.terms()) {
        Tensor::Key nk(slots);
        for (std::size_t i = 0; i < positions.size(); ++i) nk[positions[i]] = k[i];
        r.add(nk, c);
    }
    return r;
}

Tensor gen_plus(int a) { return plus_word(Word(1, (char)a)); }
Tensor gen_minus(int a) { return minus_word(Word(1, (char)a)); }

Tensor cartan_tag(const AlgebraSpec& spec, const Tag& t) {
    SlotKey k;
    k.tag = spec.canonical(t);
    return Tensor::term({k}, 1);
}

Tensor cartan_h(int a) {
    SlotKey k;
    k.h.e[a] = 1;
    return Tensor::term({k}, 1);
}

Tensor plus_word(const Word& w, const Scalar& c) {
    SlotKey k;
    k.plus = w;
    return Tensor::term({k}, c);
}

Tensor minus_word(const Word& w, const Scalar& c) {
    SlotKey k;
    k.minus = w;
    return Tensor::term({k}, c);
}

Tensor from_plus(const AlgebraElement& x) {
    Tensor r(1);
    for (auto& [w, c] : x.terms()) r.add(plus_word(w, c));
    return r;
}

Tensor from_minus(const AlgebraElement& x) {
    Tensor r(1);
    for (auto& [w, c] : x.terms()) r.add(minus_word(w, c));
    return r;
}

std::optional<std::vector<mpq_class>> weight(const AlgebraSpec& spec, const Tensor& t) {
    std::optional<std::vector<mpq_class>> w;
    for (auto& [k, c] : t.terms()) {
        std::vector<mpq_class> v(spec.m(), 0);
        for (auto& s : k) {
            for (char ch : s.plus)
                for (int a = 0; a < spec.m(); ++a) v[a] += spec.weight(a, (unsigned char)ch);
            for (char ch : s.minus)
                for (int a = 0; a < spec.m(); ++a) v[a] -= spec.weight(a, (unsigned char)ch);
        }
        if (w && *w != v) return std::nullopt;
        w = v;
    }
    if (!w) w = std::vector<mpq_class>(spec.m(), 0);
    return w;
}

std::array<int, kMaxGens> root_content(const SlotKey& k) {
    std::array<int, kMaxGens> r{};
    for (char ch : k.plus) r[(unsigned char)ch]++;
    for (char ch : k.minus) r[(unsigned char)ch]--;
    return r;
}

} // namespace qgf
