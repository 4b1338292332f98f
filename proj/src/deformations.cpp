#include "qgf/deformations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qgf {

const char* pair_type_name(PairType t) {
    switch (t) {
    case PairType::SigmaMinusRho: return "e_s(x)e_-r";
    case PairType::MinusSigmaRho: return "e_-s(x)e_r";
    case PairType::SigmaRho: return "e_s(x)e_r";
    case PairType::MinusSigmaMinusRho: return "e_-s(x)e_-r";
    }
    return "?";
}

Tag admissibility_tag(int sigma, int rho) { return tag_right(rho) + tag_left(sigma); }

DeformationPair make_pair(const AlgebraSpec& spec, int sigma, int rho, PairType type) {
    if (sigma < 0 || rho < 0 || sigma >= spec.n() || rho >= spec.n())
        throw InvalidInput("pair generator out of range");
    DeformationPair p;
    p.sigma = sigma;
    p.rho = rho;
    p.type = type;
    auto cond = [&](std::string name, Tag t) {
        p.conditions.push_back({std::move(name), t, spec.tag_trivial(t)});
    };
    switch (type) {
    case PairType::SigmaMinusRho:
        cond("e^{phi(.,r)+phi(s,.)}=1", admissibility_tag(sigma, rho));
        break;
    case PairType::MinusSigmaRho:
        cond("e^{phi(s,.)-phi(r,.)}=1", tag_left(sigma) + tag_left(rho, -1));
        cond("e^{phi(.,s)-phi(.,r)}=1", tag_right(sigma) + tag_right(rho, -1));
        cond("e^{phi(r,.)+phi(.,s)}=1", tag_left(rho) + tag_right(sigma));
        break;
    case PairType::SigmaRho:
    case PairType::MinusSigmaMinusRho:
        // Only the implied commutativity of e_s and e_r with every generator.
        cond("e^{phi(r,.)+phi(.,r)}=1", tag_left(rho) + tag_right(rho));
        cond("e^{phi(s,.)+phi(.,s)}=1", tag_left(sigma) + tag_right(sigma));
        break;
    }
    p.admissible = type == PairType::SigmaMinusRho && p.conditions[0].holds;
    return p;
}

PairReport admissible_pairs(const AlgebraSpec& spec) {
    PairReport r;
    for (int s = 0; s < spec.n(); ++s)
        for (int q = 0; q < spec.n(); ++q)
            for (PairType t : {PairType::SigmaMinusRho, PairType::MinusSigmaRho,
                               PairType::SigmaRho, PairType::MinusSigmaMinusRho}) {
                DeformationPair p = make_pair(spec, s, q, t);
                if (p.admissible) r.admissible.push_back(p);
                r.diagnostics.push_back(std::move(p));
            }
    return r;
}

Tensor driving_term(const AlgebraSpec& spec, int sigma, int rho) {
    Tensor K = cartan_tag(spec, tag_right(rho));
    return tensor_product(mul(spec, K, gen_plus(sigma)), mul(spec, K, gen_minus(rho)));
}

Tensor driving_term_flipped(const AlgebraSpec& spec, int sigma, int rho) {
    Tensor K = cartan_tag(spec, tag_right(rho));
    return tensor_product(mul(spec, K, gen_minus(rho)), mul(spec, K, gen_plus(sigma)));
}

namespace {

void require_admissible(const DeformationPair& pair) {
    if (!pair.admissible) throw PairNotAdmissible("pair is not admissible on this surface");
}

int alt_grade(const SlotKey& k) { return (int)k.minus.size() - (int)k.plus.size(); }

} // namespace

Tensor r1_piece(const TCoefficients& t, const DeformationPair& pair, int g) {
    const AlgebraSpec& spec = t.spec();
    Tensor B = t.body(g);
    Tensor X = driving_term(spec, pair.sigma, pair.rho);
    Tensor Y = conj_r0(spec, driving_term_flipped(spec, pair.sigma, pair.rho), 0, 1);
    return mul(spec, B, X) - mul(spec, Y, B);
}

Tensor first_order_R1(const TCoefficients& t, const DeformationPair& pair, int D) {
    require_admissible(pair);
    Tensor r(2);
    for (int g = 0; g <= D + 1; ++g) r.add(r1_piece(t, pair, g));
    return r.filtered([&](const Tensor::Key& k) { return alt_grade(k[0]) <= D; });
}

Tensor eps_linear_yb_residual(const TCoefficients& t, const DeformationPair& pair, int D,
                              bool check) {
    if (check) require_admissible(pair);
    const AlgebraSpec& spec = t.spec();
    const int G = D + 1;
    auto in3 = [&](const Tensor& x, int a, int b) { return embed(x, 3, {a, b}); };
    // Conjugated factors for both sides, for the body (k = 0) and R1 (k = 1).
    struct Factors {
        Tensor x12, y13, z23; // R12 R13 R23 side
        Tensor u23, v13, w12; // R23 R13 R12 side
    };
    std::vector<Factors> F[2];
    for (int k = 0; k < 2; ++k)
        for (int g = 0; g <= G; ++g) {
            Tensor b = k == 0 ? t.body(g) : r1_piece(t, pair, g);
            Tensor b12 = in3(b, 0, 1), b13 = in3(b, 0, 2), b23 = in3(b, 1, 2);
            F[k].push_back({conj_r0(spec, conj_r0(spec, b12, 0, 2), 1, 2),
                            conj_r0(spec, b13, 1, 2), b23,
                            conj_r0(spec, conj_r0(spec, b23, 0, 2), 0, 1),
                            conj_r0(spec, b13, 0, 1), b12});
        }
    Tensor res(3);
    for (int l12 = 0; l12 <= G; ++l12)
        for (int l13 = 0; l12 + l13 <= G; ++l13)
            for (int l23 = 0; l13 + l23 <= G; ++l23)
                for (int pos = 0; pos < 3; ++pos) {
                    const Factors& a = F[pos == 0][l12];
                    const Factors& b = F[pos == 1][l13];
                    const Factors& c = F[pos == 2][l23];
                    res.add(mul(spec, a.x12, b.y13, c.z23));
                    res.add(mul(spec, c.u23, b.v13, a.w12), -1);
                }
    return res.filtered([&](const Tensor::Key& k) {
        return (int)k[0].minus.size() <= D && (int)k[2].plus.size() <= D;
    });
}

// ---------------------------------------------------------------------------

Tensor f_plus(const AlgebraSpec& spec, int s) {
    return mul(spec, cartan_tag(spec, tag_left(s, -1)), gen_plus(s));
}

Tensor f_minus(const AlgebraSpec& spec, int r) {
    return mul(spec, gen_minus(r), cartan_tag(spec, tag_right(r)));
}

Tensor f_plus_word(const AlgebraSpec& spec, const Word& w) {
    Tensor r = Tensor::unit(1);
    for (char c : w) r = mul(spec, r, f_plus(spec, (unsigned char)c));
    return r;
}

Tensor f_minus_word(const AlgebraSpec& spec, const Word& w) {
    Tensor r = Tensor::unit(1);
    for (char c : w) r = mul(spec, r, f_minus(spec, (unsigned char)c));
    return r;
}

Tensor materialize(const AlgebraSpec& spec, const FForm& f) {
    Tensor r(2);
    for (auto& [k, c] : f)
        r.add(tensor_product(f_plus_word(spec, k.first), f_minus_word(spec, k.second)), c);
    return r;
}

std::optional<int> TauMap::apply(int s) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == s) return image[i];
    return std::nullopt;
}

std::optional<int> TauMap::power(int s, int m) const {
    std::optional<int> cur = s;
    for (int i = 0; i < m && cur; ++i) cur = apply(*cur);
    return cur;
}

int TauMap::chain_length(int s, int cap) const {
    int m = 0;
    while (m < cap && power(s, m + 1)) ++m;
    return m;
}

bool TauMap::disjoint() const {
    std::set<int> d(domain.begin(), domain.end());
    for (int r : image)
        if (d.count(r)) return false;
    return true;
}

Series Twist::series(const AlgebraSpec& spec) const {
    Series s;
    for (auto& f : by_order) s.push_back(materialize(spec, f));
    return s;
}

Twist elementary_twist(const AlgebraSpec& spec, const DeformationPair& pair, int order) {
    require_admissible(pair);
    Scalar q = spec.xinv(pair.sigma, pair.rho);
    Twist F;
    F.eps_order = order;
    F.by_order.resize(order + 1);
    for (int n = 0; n <= order; ++n) {
        Scalar fact = q_factorial(q, n);
        if (fact.is_zero()) throw QFactorialZero("[" + std::to_string(n) + "]_q! vanishes");
        Scalar c = (n % 2 ? Scalar(-1) : Scalar(1)) / fact;
        F.by_order[n][{Word(n, (char)pair.sigma), Word(n, (char)pair.rho)}] = c;
    }
    return F;
}

namespace {

AlgebraSpec conjugate_spec(const AlgebraSpec& spec) {
    int N = spec.n();
    std::vector<std::vector<Scalar>> x(N, std::vector<Scalar>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) x[a][b] = spec.xinv(b, a);
    std::vector<std::vector<mpq_class>> w(spec.m(), std::vector<mpq_class>(N));
    for (int c = 0; c < spec.m(); ++c)
        for (int b = 0; b < N; ++b) w[c][b] = spec.weight(c, b);
    return AlgebraSpec(spec.labels(), spec.cartan_labels(), x, w);
}

// Product of f-form series: concatenation of the words in each slot.
std::vector<FForm> fform_mul(const std::vector<FForm>& a, const std::vector<FForm>& b,
                             int order) {
    std::vector<FForm> r(order + 1);
    for (int i = 0; i <= order && i < (int)a.size(); ++i)
        for (int j = 0; i + j <= order && j < (int)b.size(); ++j)
            for (auto& [ka, ca] : a[i])
                for (auto& [kb, cb] : b[j]) {
                    Scalar& slot = r[i + j][{ka.first + kb.first, ka.second + kb.second}];
                    slot += ca * cb;
                }
    for (auto& f : r)
        for (auto it = f.begin(); it != f.end();)
            it = it->second.is_zero() ? f.erase(it) : std::next(it);
    return r;
}

} // namespace

Twist compound_twist(const AlgebraSpec& spec, const TauMap& tau, int eps_order,
                     std::optional<double> numeric_eps) {
    if (tau.domain.size() != tau.image.size()) throw InvalidInput("tau domain/image size");
    if (tau.cyclic_order && numeric_eps && std::abs(*numeric_eps) >= 1)
        throw CyclicWithoutEpsBound("cyclic tau needs |eps| < 1");
    for (std::size_t i = 0; i < tau.domain.size(); ++i)
        require_admissible(make_pair(spec, tau.domain[i], tau.image[i]));

    TCoefficients tbar(conjugate_spec(spec), eps_order);
    std::vector<FForm> F(eps_order + 1);
    F[0][{Word(), Word()}] = 1;
    for (int m = 1; m <= eps_order; ++m) {
        std::vector<int> dom;
        for (int s : tau.domain)
            if (tau.power(s, m)) dom.push_back(s);
        if (dom.empty()) break;
        std::vector<FForm> Fm(eps_order + 1);
        Fm[0][{Word(), Word()}] = 1;
        for (int n = 1; n * m <= eps_order; ++n) {
            FForm& slot = Fm[n * m];
            // multisets of size n over dom
            std::vector<Multiset> sets;
            Multiset cur;
            auto rec = [&](auto&& self, std::size_t from) -> void {
                if ((int)cur.size() == n) {
                    sets.push_back(cur);
                    return;
                }
                for (std::size_t i = from; i < dom.size(); ++i) {
                    cur.push_back(dom[i]);
                    self(self, i);
                    cur.pop_back();
                }
            };
            std::vector<int> sorted = dom;
            std::sort(sorted.begin(), sorted.end());
            dom = sorted;
            rec(rec, 0);
            for (auto& ms : sets) {
                auto words = multiset_words(ms);
                for (auto& s : words)
                    for (auto& sp : words) {
                        Scalar c = tbar.coeff(s, sp);
                        if (c.is_zero()) continue;
                        Word image;
                        for (char ch : sp) image.push_back((char)*tau.power((unsigned char)ch, m));
                        slot[{s, image}] += n % 2 ? -c : c;
                    }
            }
        }
        F = fform_mul(F, Fm, eps_order);
    }
    Twist T;
    T.eps_order = eps_order;
    T.by_order = std::move(F);
    return T;
}

Tensor cyclic_first_factor(const AlgebraSpec& spec, const TauMap& tau, VarId eps) {
    if (!tau.cyclic_order) throw InvalidInput("tau is not cyclic");
    int N = *tau.cyclic_order;
    Scalar e = Scalar::variable(eps);
    Tensor sum(2);
    for (int m = 1; m <= N; ++m)
        for (int s : tau.domain) {
            auto r = tau.power(s, m);
            if (!r) throw InvalidInput("cyclic tau is not defined on its whole domain");
            sum.add(tensor_product(f_plus(spec, s), f_minus(spec, *r)), e.pow(m - 1));
        }
    return sum.scaled(-e / (Scalar(1) - e.pow(N)));
}

std::vector<Series> recursion_residual(const AlgebraSpec& spec, const TauMap& tau,
                                       const Twist& F, int max_n) {
    const int K = F.eps_order;
    // Fn[n][j]: n-factor part at internal eps power j = k - n.
    std::vector<std::vector<FForm>> Fn(max_n + 1, std::vector<FForm>(K + 1));
    for (int k = 0; k <= K && k < (int)F.by_order.size(); ++k)
        for (auto& [key, c] : F.by_order[k]) {
            int n = (int)key.first.size();
            if (n <= max_n && k - n >= 0) Fn[n][k - n][key] = c;
        }
    Tensor one = Tensor::unit(1);
    std::vector<Series> out;
    for (int n = 1; n <= max_n; ++n) {
        Series res;
        for (int j = 0; n + j <= K; ++j) {
            Tensor r(2);
            // derivation replacing each f_{-r} by K_r
            for (auto& [key, c] : Fn[n][j]) {
                const Word& v = key.second;
                Tensor left = f_plus_word(spec, key.first);
                for (std::size_t p = 0; p < v.size(); ++p) {
                    Tensor right = mul(spec, f_minus_word(spec, v.substr(0, p)),
                                       cartan_tag(spec, tag_right((unsigned char)v[p])),
                                       f_minus_word(spec, v.substr(p + 1)));
                    r.add(tensor_product(left, right), c);
                }
            }
            for (int s : tau.domain) {
                int chain = tau.chain_length(s, j + 1);
                Tensor fs = tensor_product(one, f_plus(spec, s));
                Tensor fk = tensor_product(f_plus(spec, s), cartan_tag(spec, tag_left(s, -1)));
                for (int m = 1; m <= chain; ++m) {
                    if (j - m >= 0) {
                        Tensor X = materialize(spec, Fn[n][j - m]);
                        r.add(mul(spec, fs, X) - mul(spec, X, fs));
                    }
                    if (j - m + 1 >= 0) {
                        Tensor X = n - 1 == 0 ? (j - m + 1 == 0 ? Tensor::unit(2) : Tensor(2))
                                              : materialize(spec, Fn[n - 1][j - m + 1]);
                        r.add(mul(spec, fk, X));
                    }
                }
            }
            res.push_back(std::move(r));
        }
        out.push_back(std::move(res));
    }
    return out;
}

// ---------------------------------------------------------------------------

Series series_mul(const AlgebraSpec& spec, const Series& a, const Series& b, int order) {
    int slots = a.empty() ? 2 : a[0].slots();
    Series r(order + 1, Tensor(slots));
    for (int i = 0; i <= order && i < (int)a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= order && j < (int)b.size(); ++j)
            if (!b[j].is_zero()) r[i + j].add(mul(spec, a[i], b[j]));
    }
    return r;
}

Series series_inverse(const AlgebraSpec& spec, const Series& a, int order) {
    if (a.empty() || !(a[0] - Tensor::unit(a[0].slots())).is_zero())
        throw NonUnitConstantTerm("series inverse needs constant term 1");
    int slots = a[0].slots();
    Series r(order + 1, Tensor(slots));
    r[0] = Tensor::unit(slots);
    for (int k = 1; k <= order; ++k)
        for (int i = 1; i <= k && i < (int)a.size(); ++i)
            if (!a[i].is_zero() && !r[k - i].is_zero()) r[k].add(mul(spec, a[i], r[k - i]), -1);
    return r;
}

Series series_flip(const Series& a) {
    Series r;
    for (auto& t : a) r.push_back(flip(t));
    return r;
}

bool series_zero(const Series& a) {
    for (auto& t : a)
        if (!t.is_zero()) return false;
    return true;
}

Series cocycle_residual(const AlgebraSpec& spec, const Series& F, int order) {
    Series L, L2, R, R2;
    for (auto& f : F) {
        L.push_back(permute(coproduct_at(spec, f, 1), {2, 1, 0}));
        L2.push_back(embed(f, 3, {0, 1}));
        R.push_back(permute(coproduct_at(spec, f, 0), {0, 2, 1}));
        R2.push_back(embed(f, 3, {2, 0}));
    }
    Series lhs = series_mul(spec, L, L2, order);
    Series rhs = series_mul(spec, R, R2, order);
    for (int k = 0; k <= order; ++k) lhs[k] = lhs[k] - rhs[k];
    return lhs;
}

Series twist_R(const TCoefficients& t, const Series& F, int D, int order) {
    const AlgebraSpec& spec = t.spec();
    Series G = series_inverse(spec, series_flip(F), order);
    for (auto& g : G) g = conj_r0(spec, g, 0, 1);
    Series B{t.body_upto(D)};
    return series_mul(spec, series_mul(spec, G, B, order), F, order);
}

Series twisted_coproduct(const AlgebraSpec& spec, const Series& F, const Tensor& x, int order) {
    Series Ft = series_flip(F);
    Series G = series_inverse(spec, Ft, order);
    Series D{coproduct(spec, x)};
    return series_mul(spec, series_mul(spec, G, D, order), Ft, order);
}

Tensor first_order_coproduct(const AlgebraSpec& spec, const DeformationPair& pair,
                             const Tensor& x) {
    Tensor D = coproduct(spec, x);
    Tensor Y = driving_term_flipped(spec, pair.sigma, pair.rho);
    return mul(spec, D, Y) - mul(spec, Y, D);
}

Series twisted_coassociativity(const AlgebraSpec& spec, const Series& F, const Tensor& x,
                               int order) {
    Series Ft = series_flip(F);
    Series G = series_inverse(spec, Ft, order);
    Series Dx = series_mul(spec, series_mul(spec, G, Series{coproduct(spec, x)}, order), Ft, order);
    auto lift = [&](const Series& s, int a, int b) {
        Series r;
        for (auto& t : s) r.push_back(embed(t, 3, {a, b}));
        return r;
    };
    auto at = [&](const Series& s, int slot) {
        Series r;
        for (auto& t : s) r.push_back(coproduct_at(spec, t, slot));
        return r;
    };
    Series left = series_mul(
        spec, series_mul(spec, lift(G, 0, 1), at(Dx, 0), order), lift(Ft, 0, 1), order);
    Series right = series_mul(
        spec, series_mul(spec, lift(G, 1, 2), at(Dx, 1), order), lift(Ft, 1, 2), order);
    for (int k = 0; k <= order; ++k) left[k] = left[k] - right[k];
    return left;
}

namespace {

// m(id (x) f) on a two-slot tensor, f acting on one-slot tensors.
template <class Fn> Tensor mul_apply_second(const AlgebraSpec& spec, const Tensor& x, Fn f) {
    Tensor r(1);
    for (auto& [k, c] : x.terms())
        r.add(mul(spec, Tensor::term({k[0]}, c), f(Tensor::term({k[1]}, 1))));
    return r;
}

Tensor counit_first(const Tensor& x) {
    Tensor r(1);
    for (auto& [k, c] : x.terms())
        if (k[0].minus.empty() && k[0].plus.empty() && k[0].h.is_zero())
            r.add(Tensor::term({k[1]}, c));
    return r;
}

} // namespace

std::vector<NamedResidual> deformed_hopf_residuals(const AlgebraSpec& spec,
                                                   const DeformationPair& pair) {
    require_admissible(pair);
    std::vector<NamedResidual> out;
    Tensor Ke = mul(spec, cartan_tag(spec, tag_right(pair.rho)), gen_minus(pair.rho),
                    gen_plus(pair.sigma));
    auto S = [&](const Tensor& y) { return antipode(spec, y); };
    auto S1 = [&](const Tensor& y) {
        Tensor s = antipode(spec, y);
        return mul(spec, Ke, s) - mul(spec, s, Ke);
    };
    std::vector<std::pair<std::string, Generator>> gens;
    for (int a = 0; a < spec.n(); ++a) {
        gens.push_back({"e_" + spec.labels()[a], {Generator::Plus, a}});
        gens.push_back({"e_-" + spec.labels()[a], {Generator::Minus, a}});
    }
    for (int c = 0; c < spec.m(); ++c)
        gens.push_back({"H_" + spec.cartan_labels()[c], {Generator::H, c}});
    for (auto& [name, g] : gens) {
        Tensor x = generator(spec, g);
        Tensor d1 = first_order_coproduct(spec, pair, x);
        Tensor e = counit_first(d1);
        if (!e.is_zero()) out.push_back({"counit " + name, e});
        Tensor r = mul_apply_second(spec, coproduct(spec, x), S1) + mul_apply_second(spec, d1, S);
        if (!r.is_zero()) out.push_back({"antipode " + name, r});
    }
    return out;
}

} // namespace qgf
