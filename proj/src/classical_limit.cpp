#include <algorithm>
#include <cmath>
#include <map>

#include <boost/multiprecision/mpfr.hpp>
#include <fmt/format.h>

#include "qgf/classical.hpp"

namespace qgf {

namespace {

using mp = boost::multiprecision::mpfr_float;
using MpMat = std::vector<std::vector<mp>>;

struct PrecisionScope {
    unsigned saved;
    explicit PrecisionScope(int bits) : saved(mp::default_precision()) {
        mp::default_precision((unsigned)std::ceil(bits * 0.30103) + 5);
    }
    ~PrecisionScope() { mp::default_precision(saved); }
};

MpMat to_mp(const CMatrix& m) {
    MpMat r(m.rows(), std::vector<mp>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j).imag()) > 0)
                throw InvalidInput("universal_R_in_rep needs real representation matrices");
            r[i][j] = mp(m(i, j).real());
        }
    return r;
}

MpMat mp_identity(int n) {
    MpMat r(n, std::vector<mp>(n, mp(0)));
    for (int i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

MpMat mp_mul(const MpMat& a, const MpMat& b) {
    int n = (int)a.size(), k = (int)b.size(), m = (int)b[0].size();
    MpMat r(n, std::vector<mp>(m, mp(0)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

bool mp_is_zero(const MpMat& a) {
    for (auto& row : a)
        for (auto& v : row)
            if (v != 0) return false;
    return true;
}

// Numeric pairing: S[i][j] = d_{-w_j,n} ... d_{-w_j,1} e_{w_i}, with
// d_{-g}(w) = sum over positions k with w_k = g of prod_{l<k} x_{g w_l}^{-1} (w without k).
class Pairing {
public:
    explicit Pairing(const std::vector<std::vector<mp>>& xinv) : xinv_(xinv) {}

    mp value(const Word& plus, const Word& deriv) {
        if (plus.empty()) return mp(1);
        auto key = std::make_pair(plus, deriv);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        int g = (unsigned char)deriv[0];
        Word rest = deriv.substr(1);
        mp total = 0, pref = 1;
        for (std::size_t k = 0; k < plus.size(); ++k) {
            int c = (unsigned char)plus[k];
            if (c == g) {
                Word w = plus.substr(0, k) + plus.substr(k + 1);
                total += pref * value(w, rest);
            }
            pref *= xinv_[g][c];
        }
        memo_.emplace(key, total);
        return total;
    }

private:
    const std::vector<std::vector<mp>>& xinv_;
    std::map<std::pair<Word, Word>, mp> memo_;
};

MpMat pairing(const std::vector<std::vector<mp>>& phi, const std::vector<Word>& words) {
    int g = (int)phi.size();
    std::vector<std::vector<mp>> xinv(g, std::vector<mp>(g));
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) xinv[a][b] = exp(-phi[a][b]);
    Pairing p(xinv);
    int n = (int)words.size();
    MpMat S(n, std::vector<mp>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S[i][j] = p.value(words[i], words[j]);
    return S;
}

struct Pivots {
    std::vector<int> rows, cols;
};

// Full pivoting elimination; stops when the remaining block is below tol
// relative to the largest entry of S.
Pivots full_pivot(MpMat a, const mp& rel_tol, int max_rank = -1) {
    int n = (int)a.size();
    mp scale = 0;
    for (auto& row : a)
        for (auto& v : row) scale = std::max(scale, mp(abs(v)));
    std::vector<int> rp(n), cp(n);
    for (int i = 0; i < n; ++i) rp[i] = cp[i] = i;
    Pivots out;
    for (int k = 0; k < n; ++k) {
        if (max_rank >= 0 && k == max_rank) break;
        int bi = -1, bj = -1;
        mp best = 0;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j)
                if (abs(a[i][j]) > best) best = abs(a[i][j]), bi = i, bj = j;
        if (bi < 0 || best <= rel_tol * scale) break;
        std::swap(a[k], a[bi]);
        std::swap(rp[k], rp[bi]);
        for (auto& row : a) std::swap(row[k], row[bj]);
        std::swap(cp[k], cp[bj]);
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            mp f = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        out.rows.push_back(rp[k]);
        out.cols.push_back(cp[k]);
    }
    return out;
}

MpMat mp_inverse(MpMat a) {
    int n = (int)a.size();
    MpMat inv = mp_identity(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (abs(a[i][k]) > abs(a[p][k])) p = i;
        if (a[p][k] == 0) throw SingularReferencePoint("quotient pairing block is singular");
        std::swap(a[k], a[p]);
        std::swap(inv[k], inv[p]);
        mp d = a[k][k];
        for (int j = 0; j < n; ++j) a[k][j] /= d, inv[k][j] /= d;
        for (int i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            mp f = a[i][k];
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[k][j], inv[i][j] -= f * inv[k][j];
        }
    }
    return inv;
}

struct MpRep {
    int dim;
    std::vector<MpMat> plus, minus;
    std::vector<std::vector<mp>> weights;
};

MpRep to_mp(const QuantumRep& r) {
    MpRep m;
    m.dim = r.dim;
    for (auto& p : r.plus) m.plus.push_back(to_mp(p));
    for (auto& p : r.minus) m.minus.push_back(to_mp(p));
    for (auto& w : r.weights) {
        std::vector<mp> v;
        for (double d : w) v.push_back(mp(d));
        m.weights.push_back(v);
    }
    return m;
}

MpMat word_image(const std::vector<MpMat>& gens, const Word& w, int dim) {
    MpMat m = mp_identity(dim);
    for (char c : w) m = mp_mul(m, gens[(unsigned char)c]);
    return m;
}

CMatrix universal_R_mp(const std::vector<std::vector<mp>>& phi, const MpRep& r1, const MpRep& r2,
                       int grade) {
    int g = (int)phi.size();
    int n1 = r1.dim, n2 = r2.dim, N = n1 * n2;
    MpMat body(N, std::vector<mp>(N, mp(0)));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) body[i * n2 + j][i * n2 + j] = 1;

    // Reference point for rank detection: same pattern, order one exponents.
    mp big = 0;
    for (auto& row : phi)
        for (auto& v : row) big = std::max(big, mp(abs(v)));
    std::vector<std::vector<mp>> phi_ref = phi;
    if (big > 0)
        for (auto& row : phi_ref)
            for (auto& v : row) v = v / big;
    mp tiny = pow(mp(2), -(int)(mp::default_precision() * 3.32193 * 0.6));

    for (int len = 1; len <= grade; ++len)
        for (const Multiset& ms : multisets(g, len)) {
            std::vector<Word> words = multiset_words(ms);
            std::vector<MpMat> lower, upper;
            bool any1 = false, any2 = false;
            for (auto& w : words) {
                lower.push_back(word_image(r1.minus, w, n1));
                upper.push_back(word_image(r2.plus, w, n2));
                any1 = any1 || !mp_is_zero(lower.back());
                any2 = any2 || !mp_is_zero(upper.back());
            }
            if (!any1 || !any2) continue;
            int rank = (int)full_pivot(pairing(phi_ref, words), tiny).rows.size();
            if (rank == 0) continue;
            MpMat S = pairing(phi, words);
            Pivots pv = full_pivot(S, mp(0), rank);
            if ((int)pv.rows.size() < rank)
                throw SingularReferencePoint("pairing rank drops at the evaluation point");
            int r = rank;
            MpMat sub(r, std::vector<mp>(r));
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) sub[a][b] = S[pv.rows[a]][pv.cols[b]];
            MpMat inv = mp_inverse(sub);
            // B += sum (S_IJ^{-1})_{ba} e_{-w_J[b]} (x) e_{w_I[a]}
            for (int b = 0; b < r; ++b) {
                const MpMat& L = lower[pv.cols[b]];
                if (mp_is_zero(L)) continue;
                for (int a = 0; a < r; ++a) {
                    const MpMat& U = upper[pv.rows[a]];
                    if (mp_is_zero(U) || inv[b][a] == 0) continue;
                    const mp& t = inv[b][a];
                    for (int i = 0; i < n1; ++i)
                        for (int k = 0; k < n1; ++k) {
                            if (L[i][k] == 0) continue;
                            mp tl = t * L[i][k];
                            for (int j = 0; j < n2; ++j)
                                for (int l = 0; l < n2; ++l)
                                    if (U[j][l] != 0) body[i * n2 + j][k * n2 + l] += tl * U[j][l];
                        }
                }
            }
        }
    // Cartan prefactor e^{phi(wt_i, wt_j)} on the left.
    CMatrix R(N, N);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            mp e = 0;
            for (int a = 0; a < g; ++a)
                for (int b = 0; b < g; ++b) e += r1.weights[i][a] * phi[a][b] * r2.weights[j][b];
            mp f = exp(e);
            for (int c = 0; c < N; ++c)
                R(i * n2 + j, c) = cplx((f * body[i * n2 + j][c]).convert_to<double>(), 0.0);
        }
    return R;
}

} // namespace

Eigen::MatrixXd numeric_pairing_matrix(const std::vector<std::vector<double>>& phi,
                                       const std::vector<Word>& words) {
    PrecisionScope ps(128);
    std::vector<std::vector<mp>> p(phi.size());
    for (std::size_t a = 0; a < phi.size(); ++a)
        for (double v : phi[a]) p[a].push_back(mp(v));
    MpMat S = pairing(p, words);
    Eigen::MatrixXd out(S.size(), S.size());
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) out(i, j) = S[i][j].convert_to<double>();
    return out;
}

CMatrix universal_R_in_rep(const std::vector<std::vector<double>>& phi, const QuantumRep& rep1,
                           const QuantumRep& rep2, int grade, int bits) {
    PrecisionScope ps(bits);
    std::vector<std::vector<mp>> p(phi.size());
    for (std::size_t a = 0; a < phi.size(); ++a)
        for (double v : phi[a]) p[a].push_back(mp(v));
    return universal_R_mp(p, to_mp(rep1), to_mp(rep2), grade);
}

// Loop representation data built directly in MPFR so that c = 2 sinh(hbar/2)
// keeps full precision.
namespace {
MpRep mp_sl2_fundamental(const mp& hbar) {
    MpRep r;
    r.dim = 2;
    mp c = 2 * sinh(hbar / 2);
    MpMat E = {{mp(0), mp(1)}, {mp(0), mp(0)}}, F = {{mp(0), mp(0)}, {mp(1), mp(0)}};
    MpMat cF = F;
    cF[1][0] = c;
    r.plus = {E};
    r.minus = {cF};
    r.weights = {{mp(0.5)}, {mp(-0.5)}};
    return r;
}

MpRep mp_sl2_loop(const mp& hbar, const mp& lambda) {
    MpRep r;
    r.dim = 2;
    mp c = 2 * sinh(hbar / 2);
    auto m = [](mp a, mp b, mp cc, mp d) { return MpMat{{a, b}, {cc, d}}; };
    mp z = 0;
    // generator 0 is the affine node
    r.plus = {m(z, z, lambda, z), m(z, mp(1), z, z)};
    r.minus = {m(z, c / lambda, z, z), m(z, z, c, z)};
    r.weights = {{mp(0), mp(0.5)}, {mp(0), mp(-0.5)}};
    return r;
}
} // namespace

double quantum_rep_residual(const std::vector<std::vector<double>>& phi, const QuantumRep& rep) {
    int g = (int)phi.size(), n = rep.dim;
    auto pairing_w = [&](const std::vector<double>& u, int a, bool left) {
        double s = 0;
        for (int b = 0; b < g; ++b) s += left ? phi[a][b] * u[b] : u[b] * phi[b][a];
        return s;
    };
    double worst = 0;
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
            CMatrix lhs = rep.plus[a] * rep.minus[b] - rep.minus[b] * rep.plus[a];
            if (a == b)
                for (int i = 0; i < n; ++i)
                    lhs(i, i) -= std::exp(pairing_w(rep.weights[i], a, true)) -
                                 std::exp(-pairing_w(rep.weights[i], a, false));
            worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
        }
    // e_a maps weight w to w + alpha_a, up to the kernel of phi on both sides.
    for (int a = 0; a < g; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::abs(rep.plus[a](i, j)) == 0 && std::abs(rep.minus[a](i, j)) == 0) continue;
                double sign = std::abs(rep.plus[a](i, j)) != 0 ? 1 : -1;
                std::vector<double> d(g);
                for (int b = 0; b < g; ++b)
                    d[b] = rep.weights[i][b] - rep.weights[j][b] - sign * (a == b ? 1 : 0);
                for (int b = 0; b < g; ++b) {
                    worst = std::max(worst, std::abs(pairing_w(d, b, true)));
                    worst = std::max(worst, std::abs(pairing_w(d, b, false)));
                }
            }
    return worst;
}

std::vector<std::vector<double>> sl2_phi_unit() { return {{1.0}}; }
std::vector<std::vector<double>> a11_phi_unit() { return {{1.0, -1.0}, {-1.0, 1.0}}; }

QuantumRep sl2_quantum_fundamental(double hbar) {
    QuantumRep r;
    r.dim = 2;
    r.plus = {unit_matrix(2, 1, 2)};
    r.minus = {2 * std::sinh(hbar / 2) * unit_matrix(2, 2, 1)};
    r.weights = {{0.5}, {-0.5}};
    return r;
}

QuantumRep sl2_quantum_loop(double hbar, double lambda) {
    QuantumRep r;
    r.dim = 2;
    double c = 2 * std::sinh(hbar / 2);
    r.plus = {lambda * unit_matrix(2, 2, 1), unit_matrix(2, 1, 2)};
    r.minus = {c / lambda * unit_matrix(2, 1, 2), c * unit_matrix(2, 2, 1)};
    r.weights = {{0, 0.5}, {0, -0.5}};
    return r;
}

CMatrix sl2_standard_R(double hbar, int grade) {
    if (grade < 1) throw TruncationTooCoarse("the fundamental representation needs grade >= 1");
    PrecisionScope ps(256);
    mp h(hbar);
    MpRep rep = mp_sl2_fundamental(h);
    return universal_R_mp({{h}}, rep, rep, grade);
}

CMatrix sl2_loop_R(double hbar, double x, int grade) {
    if (!(x > 0 && x < 1)) throw InvalidInput("sl2_loop_R needs 0 < x < 1");
    if (grade < 1 || std::pow(x, grade / 2 + 1) > 1e-8)
        throw TruncationTooCoarse(fmt::format("grade {} too low for x = {}", grade, x));
    PrecisionScope ps(512);
    mp h(hbar);
    return universal_R_mp({{h, -h}, {-h, h}}, mp_sl2_loop(h, mp(1)), mp_sl2_loop(h, mp(x)), grade);
}

CMatrix universal_R_in_rep_scaled(const std::vector<std::vector<double>>& phi_unit, double hbar,
                                  const std::function<QuantumRep(double)>& rep1,
                                  const std::function<QuantumRep(double)>& rep2, int grade,
                                  int bits) {
    std::vector<std::vector<double>> phi = phi_unit;
    for (auto& row : phi)
        for (auto& v : row) v *= hbar;
    return universal_R_in_rep(phi, rep1(hbar), rep2(hbar), grade, bits);
}

LimitReport classical_limit(const std::function<CMatrix(double)>& R_of_hbar,
                            const CMatrix& target, const std::vector<double>& hbars) {
    LimitReport rep;
    for (double h : hbars) {
        if (h == 0) throw InvalidInput("classical_limit at hbar = 0");
        CMatrix R = R_of_hbar(h);
        CMatrix ext = (R - CMatrix::Identity(R.rows(), R.cols())) / h;
        rep.hbar.push_back(h);
        rep.error.push_back((ext - target).norm());
        rep.extracted = ext;
    }
    for (std::size_t i = 0; i + 1 < rep.error.size(); ++i)
        rep.ratio.push_back(rep.error[i] / rep.error[i + 1]);
    return rep;
}

} // namespace qgf
