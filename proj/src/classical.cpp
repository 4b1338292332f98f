#include "qgf/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

namespace qgf {

CMatrix unit_matrix(int n, int i, int j) {
    CMatrix m = CMatrix::Zero(n, n);
    m(i - 1, j - 1) = 1.0;
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

CMatrix flip_tensor(const CMatrix& r, int n) {
    CMatrix out(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) out(b * n + a, d * n + c) = r(a * n + b, c * n + d);
    return out;
}

CMatrix embed_tensor(const CMatrix& r, int n, int i, int j) {
    int N = n * n * n;
    CMatrix out = CMatrix::Zero(N, N);
    int other = 3 - i - j;
    int idx_out[3], idx_in[3];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    cplx v = r(a * n + b, c * n + d);
                    if (v == 0.0) continue;
                    for (int k = 0; k < n; ++k) {
                        idx_out[i] = a, idx_out[j] = b, idx_out[other] = k;
                        idx_in[i] = c, idx_in[j] = d, idx_in[other] = k;
                        out((idx_out[0] * n + idx_out[1]) * n + idx_out[2],
                            (idx_in[0] * n + idx_in[1]) * n + idx_in[2]) += v;
                    }
                }
    return out;
}

static CMatrix bracket(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

Representation sl_fundamental(int n) {
    if (n < 2) throw InvalidInput("sl(n) needs n >= 2");
    Representation rep;
    rep.name = fmt::format("sl{}", n);
    rep.dim = n;
    for (int i = 1; i < n; ++i) {
        rep.e.push_back(unit_matrix(n, i, i + 1));
        rep.f.push_back(unit_matrix(n, i + 1, i));
        rep.h.push_back(unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            rep.pos.push_back(unit_matrix(n, i, j));
            rep.neg.push_back(unit_matrix(n, j, i));
            rep.height.push_back(j - i);
        }
    return rep;
}

double representation_residual(const Representation& rep) {
    int r = (int)rep.e.size();
    // Cartan matrix read off from [h_i, e_j] = a_ij e_j.
    std::vector<std::vector<double>> a(r, std::vector<double>(r));
    double worst = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            CMatrix he = bracket(rep.h[i], rep.e[j]);
            cplx num = (rep.e[j].adjoint() * he).trace();
            cplx den = (rep.e[j].adjoint() * rep.e[j]).trace();
            a[i][j] = (num / den).real();
            worst = std::max(worst, (he - a[i][j] * rep.e[j]).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             (bracket(rep.h[i], rep.f[j]) + a[i][j] * rep.f[j]).cwiseAbs().maxCoeff());
            CMatrix ef = bracket(rep.e[i], rep.f[j]);
            if (i == j) ef -= rep.h[i];
            worst = std::max(worst, ef.cwiseAbs().maxCoeff());
            worst = std::max(worst, bracket(rep.h[i], rep.h[j]).cwiseAbs().maxCoeff());
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            int k = 1 - (int)std::lround(a[i][j]);
            CMatrix pe = rep.e[j], pf = rep.f[j];
            for (int m = 0; m < k; ++m) {
                pe = bracket(rep.e[i], pe);
                pf = bracket(rep.f[i], pf);
            }
            worst = std::max({worst, pe.cwiseAbs().maxCoeff(), pf.cwiseAbs().maxCoeff()});
        }
    return worst;
}

// Coefficient c with m = c v, or nullopt.
static std::optional<cplx> proportional(const CMatrix& m, const CMatrix& v, double tol = 1e-12) {
    cplx c = (v.adjoint() * m).trace() / (v.adjoint() * v).trace();
    if ((m - c * v).cwiseAbs().maxCoeff() > tol) return std::nullopt;
    return c;
}

void check_root_normalization(const Representation& rep) {
    for (std::size_t g = 0; g < rep.f.size(); ++g)
        for (std::size_t i = 0; i < rep.neg.size(); ++i) {
            CMatrix b = bracket(rep.f[g], rep.neg[i]);
            if (b.cwiseAbs().maxCoeff() < 1e-12) continue;
            bool found = false;
            for (std::size_t j = 0; j < rep.neg.size() && !found; ++j) {
                auto c = proportional(b, rep.neg[j]);
                if (!c) continue;
                found = true;
                CMatrix lhs = bracket(rep.pos[j], rep.f[g]);
                if ((lhs - *c * rep.pos[i]).cwiseAbs().maxCoeff() > 1e-12)
                    throw NormalizationInconsistent(
                        fmt::format("[E_{}, e_-{}] != c E_{}", j, g + 1, i));
            }
            if (!found)
                throw NormalizationInconsistent(
                    fmt::format("[e_-{}, E_-{}] is not a stored root vector", g + 1, i));
        }
    for (std::size_t i = 0; i < rep.pos.size(); ++i)
        for (std::size_t j = 0; j < rep.neg.size(); ++j) {
            cplx p = (rep.pos[i] * rep.neg[j]).trace();
            if (std::abs(p - (i == j ? 1.0 : 0.0)) > 1e-12)
                throw NormalizationInconsistent("root vectors are not dual under the trace form");
        }
}

// Orthonormal-dual basis of the Cartan subalgebra under the trace form.
static CMatrix cartan_part(const Representation& rep) {
    int r = (int)rep.h.size();
    Eigen::MatrixXcd G(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) G(i, j) = (rep.h[i] * rep.h[j]).trace();
    Eigen::MatrixXcd Gi = G.inverse();
    int n = rep.dim;
    CMatrix c = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) c += Gi(i, j) * kron(rep.h[i], rep.h[j]);
    return c;
}

CMatrix casimir_cartan(const Representation& rep) { return cartan_part(rep); }

CMatrix casimir(const Representation& rep) {
    CMatrix c = cartan_part(rep);
    for (std::size_t i = 0; i < rep.pos.size(); ++i)
        c += kron(rep.pos[i], rep.neg[i]) + kron(rep.neg[i], rep.pos[i]);
    return c;
}

const char* family_name(Family f) {
    switch (f) {
    case Family::Standard: return "standard";
    case Family::Trigonometric: return "trigonometric";
    case Family::Twisted: return "twisted";
    case Family::Esoteric: return "esoteric";
    case Family::EllipticSeries: return "elliptic-series";
    }
    return "?";
}

static void check_antisym(const Representation& rep, const CMatrix& a) {
    int n = rep.dim;
    if (a.rows() != n * n || a.cols() != n * n)
        throw InvalidInput("antisymmetric Cartan piece has the wrong size");
    if ((a + flip_tensor(a, n)).cwiseAbs().maxCoeff() > 1e-12)
        throw NormalizationInconsistent("supplied Cartan piece is not antisymmetric");
}

CMatrix standard_r_matrix(const Representation& rep, const std::optional<CMatrix>& phi_antisym) {
    check_root_normalization(rep);
    CMatrix r = 0.5 * cartan_part(rep);
    if (phi_antisym) {
        check_antisym(rep, *phi_antisym);
        r += *phi_antisym;
    }
    for (std::size_t i = 0; i < rep.pos.size(); ++i) r += kron(rep.neg[i], rep.pos[i]);
    CMatrix sym = r + flip_tensor(r, rep.dim);
    if ((sym - casimir(rep)).cwiseAbs().maxCoeff() > 1e-12)
        throw NormalizationInconsistent("r + r^t differs from the Casimir element");
    return r;
}

ClassicalR standard_r(const Representation& rep, const std::optional<CMatrix>& phi_antisym) {
    CMatrix r = standard_r_matrix(rep, phi_antisym);
    return {Family::Standard, "standard " + rep.name, rep.dim, Threading::Multiplicative,
            [r](cplx) { return r; }};
}

CMatrix trig_r(const Representation& rep, cplx x, const std::optional<CMatrix>& phi_antisym) {
    if (std::abs(1.0 - x) < 1e-12) throw PoleAtPoint("trig_r at x = 1");
    return standard_r_matrix(rep, phi_antisym) + (x / (1.0 - x)) * casimir(rep);
}

ClassicalR trig_family(const Representation& rep, const std::optional<CMatrix>& phi_antisym) {
    CMatrix r0 = standard_r_matrix(rep, phi_antisym);
    CMatrix c = casimir(rep);
    return {Family::Trigonometric, "trigonometric " + rep.name, rep.dim,
            Threading::Multiplicative, [r0, c](cplx x) {
                if (std::abs(1.0 - x) < 1e-12) throw PoleAtPoint("trig_r at x = 1");
                return CMatrix(r0 + (x / (1.0 - x)) * c);
            }};
}

// ---------------------------------------------------------------------------
// twisted

Grading sl3_diagram_grading() {
    CMatrix J = CMatrix::Zero(3, 3);
    J(0, 2) = 1, J(1, 1) = -1, J(2, 0) = 1;
    return {2, [J](const CMatrix& X) { return CMatrix(-J * X.transpose() * J); }};
}

// Basis of sl(n) in the representation: Cartan, positive and negative root vectors.
static std::vector<CMatrix> lie_basis(const Representation& rep) {
    std::vector<CMatrix> b = rep.h;
    b.insert(b.end(), rep.pos.begin(), rep.pos.end());
    b.insert(b.end(), rep.neg.begin(), rep.neg.end());
    return b;
}

static void check_grading(const Representation& rep, const Grading& g) {
    if (g.k != 2) throw GradingInvalid(fmt::format("only k = 2 is supported, got {}", g.k));
    auto basis = lie_basis(rep);
    for (auto& x : basis) {
        if ((g.theta(g.theta(x)) - x).cwiseAbs().maxCoeff() > 1e-12)
            throw GradingInvalid("theta is not of order 2");
        if (std::abs(g.theta(x).trace()) > 1e-12) throw GradingInvalid("theta leaves sl(n)");
    }
    for (auto& x : basis)
        for (auto& y : basis)
            if ((g.theta(bracket(x, y)) - bracket(g.theta(x), g.theta(y))).cwiseAbs().maxCoeff() >
                1e-12)
                throw GradingInvalid("theta is not a Lie algebra automorphism");
}

std::vector<CMatrix> graded_casimir(const Representation& rep, const Grading& g) {
    check_grading(rep, g);
    int n = rep.dim;
    CMatrix c = casimir(rep);
    // (1 (x) P_j) C with P_0 = (1 + theta)/2, P_1 = (1 - theta)/2, applied slotwise.
    std::vector<CMatrix> out(2, CMatrix::Zero(n * n, n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            CMatrix slot2(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) slot2(i, j) = c(a * n + i, b * n + j);
            CMatrix t = g.theta(slot2);
            CMatrix p0 = 0.5 * (slot2 + t), p1 = 0.5 * (slot2 - t);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    out[0](a * n + i, b * n + j) = p0(i, j);
                    out[1](a * n + i, b * n + j) = p1(i, j);
                }
        }
    return out;
}

// Standard r of the fixed subalgebra so(3): Cartan h0 = e11 - e33, E = e12 + e23.
static CMatrix twisted_finite_part(const CMatrix& c0) {
    CMatrix h0 = unit_matrix(3, 1, 1) - unit_matrix(3, 3, 3);
    CMatrix E = unit_matrix(3, 1, 2) + unit_matrix(3, 2, 3);
    CMatrix F = unit_matrix(3, 2, 1) + unit_matrix(3, 3, 2);
    // Dual elements under the trace form.
    double hh = (h0 * h0).trace().real(), ef = (E * F).trace().real();
    CMatrix cartan = kron(h0, h0) / hh;
    CMatrix r = 0.5 * cartan + kron(F, E) / ef;
    CMatrix full = cartan + (kron(E, F) + kron(F, E)) / ef;
    if ((full - c0).cwiseAbs().maxCoeff() > 1e-12)
        throw GradingInvalid("fixed subalgebra Casimir differs from the so(3) invariant element");
    return r;
}

CMatrix twisted_r(const Representation& rep, int k, cplx x) {
    return twisted_family(rep, k).at(x);
}

ClassicalR twisted_family(const Representation& rep, int k) {
    if (rep.dim != 3 || rep.e.size() != 2) throw GradingInvalid("twisted_r needs sl(3) fundamental");
    Grading g = sl3_diagram_grading();
    g.k = k;
    auto cj = graded_casimir(rep, g);
    CMatrix base = twisted_finite_part(cj[0]) - cj[0];
    CMatrix c0 = cj[0], c1 = cj[1];
    return {Family::Twisted, "twisted sl3 k=2", 3, Threading::Multiplicative,
            [base, c0, c1](cplx x) {
                if (std::abs(1.0 - x * x) < 1e-12) throw PoleAtPoint("twisted_r at x^2 = 1");
                return CMatrix(base + (c0 + x * c1) / (1.0 - x * x));
            }};
}

// ---------------------------------------------------------------------------
// esoteric

TauMap esoteric_shift(int N) {
    TauMap t;
    for (int i = 1; i <= N - 1; ++i) {
        t.domain.push_back(i);
        t.image.push_back((i + 1) % N);
    }
    return t;
}

static CMatrix node_pos(int N, int s) {
    return s == 0 ? unit_matrix(N, N, 1) : unit_matrix(N, s, s + 1);
}
static CMatrix node_neg(int N, int s) {
    return s == 0 ? unit_matrix(N, 1, N) : unit_matrix(N, s + 1, s);
}
static Eigen::VectorXd node_coroot(int N, int s) {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(N);
    if (s == 0) {
        h(N - 1) = 1, h(0) = -1;
    } else {
        h(s - 1) = 1, h(s) = -1;
    }
    return h;
}

static void check_tau(int N, const TauMap& tau) {
    if (tau.domain.size() != tau.image.size()) throw InvalidInput("tau domain/image size mismatch");
    for (int s : tau.domain)
        if (s < 0 || s >= N) throw InvalidInput("tau node out of range");
    for (int s : tau.image)
        if (s < 0 || s >= N) throw InvalidInput("tau node out of range");
    if (tau.cyclic_order) throw CyclicTauNotAllowedHere("cyclic tau; use the elliptic construction");
    for (int s : tau.domain)
        for (int m = 1; m <= N; ++m) {
            auto p = tau.power(s, m);
            if (!p) break;
            if (*p == s) throw CyclicTauNotAllowedHere(fmt::format("tau^{} fixes node {}", m, s));
        }
    // tau must preserve the Cartan matrix on its domain.
    auto a = [&](int i, int j) {
        return (node_coroot(N, i).transpose() * node_coroot(N, j)).value();
    };
    for (std::size_t i = 0; i < tau.domain.size(); ++i)
        for (std::size_t j = 0; j < tau.domain.size(); ++j)
            if (std::abs(a(tau.domain[i], tau.domain[j]) - a(tau.image[i], tau.image[j])) > 1e-12)
                throw InvalidInput("tau does not preserve the Cartan matrix");
}

CMatrix esoteric_phi(int N, const TauMap& tau) {
    check_tau(N, tau);
    // Unknowns: the N*N entries of Phi with phi(u, v) = u^t Phi v on diagonal vectors.
    int nu = N * N;
    auto id = [N](int i, int j) { return i * N + j; };
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(N, N) - Eigen::MatrixXd::Constant(N, N, 1.0 / N);
    // Phi + Phi^t = P (twice half the Cartan part of the Casimir).
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Eigen::VectorXd r = Eigen::VectorXd::Zero(nu);
            r(id(i, j)) += 1;
            r(id(j, i)) += 1;
            rows.push_back(r);
            rhs.push_back(P(i, j));
        }
    // Phi 1 = 0 and 1^t Phi = 0.
    for (int i = 0; i < N; ++i) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(nu), c = Eigen::VectorXd::Zero(nu);
        for (int j = 0; j < N; ++j) r(id(i, j)) = 1, c(id(j, i)) = 1;
        rows.push_back(r);
        rhs.push_back(0);
        rows.push_back(c);
        rhs.push_back(0);
    }
    // P (Phi^t H_s + Phi H_{tau s}) = 0.
    for (std::size_t k = 0; k < tau.domain.size(); ++k) {
        Eigen::VectorXd hs = node_coroot(N, tau.domain[k]), ht = node_coroot(N, tau.image[k]);
        for (int comp = 0; comp < N; ++comp) {
            Eigen::VectorXd r = Eigen::VectorXd::Zero(nu);
            for (int v = 0; v < N; ++v) {
                double pc = P(comp, v);
                if (pc == 0) continue;
                for (int w = 0; w < N; ++w) {
                    r(id(w, v)) += pc * hs(w); // (Phi^t H_s)_v = sum_w Phi_wv hs_w
                    r(id(v, w)) += pc * ht(w); // (Phi H_t)_v = sum_w Phi_vw ht_w
                }
            }
            rows.push_back(r);
            rhs.push_back(0);
        }
    }
    Eigen::MatrixXd A((int)rows.size(), nu);
    Eigen::VectorXd b((int)rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) A.row((int)i) = rows[i], b((int)i) = rhs[i];
    Eigen::VectorXd sol = A.completeOrthogonalDecomposition().solve(b);
    if ((A * sol - b).cwiseAbs().maxCoeff() > 1e-10)
        throw PairNotAdmissible("no Cartan part satisfies phi(s,.) + phi(., tau s) = 0");
    CMatrix phi = CMatrix::Zero(N * N, N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            phi(i * N + j, i * N + j) = sol(id(i, j));
    return phi;
}

namespace {
struct BracketBasis {
    std::vector<std::vector<int>> words; // nested [g1, [g2, ... g_h]]
    std::vector<CMatrix> neg, pos;
};

CMatrix nested(const std::vector<int>& w, const std::function<CMatrix(int)>& gen) {
    CMatrix m = gen(w.back());
    for (int i = (int)w.size() - 2; i >= 0; --i) m = bracket(gen(w[i]), m);
    return m;
}

// Root vector basis of the negative subalgebra generated by the domain nodes.
BracketBasis bracket_basis(int N, const std::vector<int>& domain) {
    BracketBasis b;
    std::vector<Eigen::VectorXcd> flat;
    auto independent = [&](const CMatrix& m) {
        if (m.cwiseAbs().maxCoeff() < 1e-12) return false;
        Eigen::MatrixXcd A(N * N, (int)flat.size() + 1);
        for (std::size_t i = 0; i < flat.size(); ++i) A.col((int)i) = flat[i];
        A.col((int)flat.size()) = Eigen::Map<const Eigen::VectorXcd>(m.data(), N * N);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
        lu.setThreshold(1e-10);
        return lu.rank() == (int)flat.size() + 1;
    };
    auto neg = [N](int s) { return node_neg(N, s); };
    std::vector<std::vector<int>> level;
    for (int s : domain) level.push_back({s});
    while (!level.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& w : level) {
            CMatrix m = nested(w, neg);
            if (!independent(m)) continue;
            flat.push_back(Eigen::Map<const Eigen::VectorXcd>(m.data(), N * N));
            b.words.push_back(w);
            b.neg.push_back(m);
            for (int s : domain) {
                auto nw = w;
                nw.insert(nw.begin(), s);
                next.push_back(nw);
            }
        }
        level = std::move(next);
    }
    // Dual positive elements under the trace form.
    auto pos = [N](int s) { return node_pos(N, s); };
    std::vector<CMatrix> raw;
    for (auto& w : b.words) raw.push_back(nested(w, pos));
    int k = (int)raw.size();
    Eigen::MatrixXcd G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) G(i, j) = (raw[i] * b.neg[j]).trace();
    Eigen::MatrixXcd M = G.inverse();
    for (int i = 0; i < k; ++i) {
        CMatrix e = CMatrix::Zero(N, N);
        for (int j = 0; j < k; ++j) e += M(i, j) * raw[j];
        b.pos.push_back(e);
    }
    return b;
}
} // namespace

CMatrix esoteric_deformation(int N, const TauMap& tau, cplx eps, cplx z) {
    check_tau(N, tau);
    BracketBasis b = bracket_basis(N, tau.domain);
    CMatrix d = CMatrix::Zero(N * N, N * N);
    for (std::size_t i = 0; i < b.words.size(); ++i) {
        const auto& w = b.words[i];
        int h = (int)w.size();
        for (int m = 1;; ++m) {
            std::vector<int> img;
            for (int s : w) {
                auto p = tau.power(s, m);
                if (!p) break;
                img.push_back(*p);
            }
            if (img.size() != w.size()) break;
            CMatrix tn = nested(img, [N](int s) { return node_neg(N, s); });
            d += std::pow(eps, m * h) * std::pow(z, -h) * kron(b.pos[i], tn);
        }
    }
    return d;
}

CMatrix esoteric_base(int N, const TauMap& tau, cplx z) {
    CMatrix phi = esoteric_phi(N, tau);
    cplx x = std::pow(z, N);
    if (std::abs(1.0 - x) < 1e-12) throw PoleAtPoint("esoteric r at z^N = 1");
    CMatrix r = phi;
    CMatrix c = CMatrix::Zero(N * N, N * N);
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            CMatrix t = kron(unit_matrix(N, i, j), unit_matrix(N, j, i));
            c += std::pow(z, i - j) * t;
            if (i > j) r += std::pow(z, i - j) * t;
        }
    c -= CMatrix::Identity(N * N, N * N) / double(N);
    return r + (x / (1.0 - x)) * c;
}

ClassicalR esoteric_r(int N, const TauMap& tau, cplx eps) {
    check_tau(N, tau);
    esoteric_phi(N, tau);
    return {Family::Esoteric, fmt::format("esoteric sl{}", N), N, Threading::Multiplicative,
            [N, tau, eps](cplx z) {
                CMatrix d = esoteric_deformation(N, tau, eps, z);
                CMatrix dt = flip_tensor(esoteric_deformation(N, tau, eps, 1.0 / z), N);
                return CMatrix(esoteric_base(N, tau, z) - d + dt);
            }};
}

// ---------------------------------------------------------------------------

double cybe_residual(const ClassicalR& r, const std::vector<std::pair<cplx, cplx>>& points) {
    double worst = 0;
    int n = r.n;
    for (auto [x, y] : points) {
        cplx xy = r.threading == Threading::Multiplicative ? x * y : x + y;
        CMatrix r12 = embed_tensor(r.at(x), n, 0, 1);
        CMatrix r13 = embed_tensor(r.at(xy), n, 0, 2);
        CMatrix r23 = embed_tensor(r.at(y), n, 1, 2);
        CMatrix s = r13 + r23;
        CMatrix lhs = r12 * s - s * r12 + r13 * r23 - r23 * r13;
        worst = std::max(worst, lhs.norm());
    }
    return worst;
}

std::vector<std::pair<cplx, cplx>> spectral_points(uint64_t seed, int count, Threading th,
                                                   int pole_order) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> mod(0.5, 1.5), ang(0, 2 * M_PI), re(0.05, 0.45),
        im(-0.1, 0.1);
    std::vector<std::pair<cplx, cplx>> pts;
    while ((int)pts.size() < count) {
        cplx x, y;
        if (th == Threading::Multiplicative) {
            x = std::polar(mod(gen), ang(gen));
            y = std::polar(mod(gen), ang(gen));
            bool bad = false;
            for (cplx v : {x, y, x * y})
                for (int k = 1; k <= pole_order; ++k)
                    if (std::abs(1.0 - std::pow(v, k)) < 1e-6) bad = true;
            if (bad) continue;
        } else {
            x = {re(gen), im(gen)};
            y = {re(gen), im(gen)};
        }
        pts.push_back({x, y});
    }
    return pts;
}

CMatrix trig_quantum_R(cplx q, cplx x) { return trig_quantum_R(q, x, std::sqrt(x)); }

CMatrix trig_quantum_R(cplx q, cplx x, cplx sx) {
    if (std::abs(sx) < 1e-300) throw PoleAtPoint("trig_quantum_R at x = 0");
    CMatrix R = CMatrix::Zero(4, 4);
    cplx a = 1.0 - q * q / x, b = q * (1.0 - 1.0 / x), c = (1.0 - q * q) / sx;
    R(0, 0) = R(3, 3) = a;
    R(1, 1) = R(2, 2) = b;
    R(1, 2) = R(2, 1) = c;
    return R;
}

} // namespace qgf
