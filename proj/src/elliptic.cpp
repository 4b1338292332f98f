#include "qgf/elliptic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qgf/errors.hpp"

namespace qgf {

namespace {

constexpr double kDegenerate = 1e-8;
constexpr int kMaxFactors = 200;

void check_disk(cplx eps) {
    if (!(std::abs(eps) < 1.0))
        throw EpsOutOfDisk(fmt::format("|eps| = {} is not < 1", std::abs(eps)));
}

// Inverse of a matrix in the eight-vertex pattern, block by block, so the
// zero pattern survives exactly.
CMatrix eight_vertex_inverse(const CMatrix& m) {
    CMatrix out = CMatrix::Zero(4, 4);
    for (auto [i, j] : {std::pair{0, 3}, std::pair{1, 2}}) {
        cplx det = m(i, i) * m(j, j) - m(i, j) * m(j, i);
        if (std::abs(det) < kDegenerate) throw PoleAtPoint("eight-vertex factor is singular");
        out(i, i) = m(j, j) / det;
        out(j, j) = m(i, i) / det;
        out(i, j) = -m(i, j) / det;
        out(j, i) = -m(j, i) / det;
    }
    return out;
}

CMatrix swap_tensor(const CMatrix& m) { return flip_tensor(m, 2); }

EllipticParams inverse_point(const EllipticParams& p) {
    EllipticParams r = p;
    r.x = 1.0 / p.x;
    r.sqrt_x = 1.0 / p.root();
    return r;
}

} // namespace

EllipticParams EllipticParams::from_u(cplx q, cplx eps, cplx u, int M) {
    const cplx I(0, 1);
    EllipticParams p;
    p.q = q;
    p.eps = eps;
    p.x = std::exp(2.0 * M_PI * I * u);
    p.sqrt_x = std::exp(M_PI * I * u);
    p.M = M;
    return p;
}

cplx EllipticParams::root() const { return sqrt_x == 0.0 ? std::sqrt(x) : sqrt_x; }

CMatrix EightVertex::matrix() const {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = a;
    m(1, 1) = m(2, 2) = b;
    m(1, 2) = m(2, 1) = c;
    m(0, 3) = m(3, 0) = d;
    return m;
}

int default_truncation(cplx eps, double floor) {
    check_disk(eps);
    double r = std::abs(eps);
    if (r < floor) return 1;
    int M = 1;
    double pw = r;
    while (pw >= floor) {
        if (M == kMaxFactors)
            throw TruncationInsufficient(
                fmt::format("|eps|^{} = {:.3e} is not below {:.0e}", M, pw, floor));
        ++M;
        pw *= r;
    }
    return M;
}

EightVertex elliptic_Fm(int m, const EllipticParams& p) {
    if (m < 1) throw InvalidInput("factor index must be >= 1");
    check_disk(p.eps);
    cplx sx = p.root();
    if (std::abs(sx) < kDegenerate) throw PoleAtPoint("x = 0");
    cplx e2 = std::pow(p.eps, 2 * m), em = std::pow(p.eps, m);
    cplx off = em * (1.0 / p.q - p.q) / sx;
    EightVertex f;
    if (m % 2 == 1) {
        f.a = 1.0 - e2 / p.x;
        f.b = 1.0 - e2 * p.q * p.q / p.x;
        f.c = 0;
        f.d = off;
    } else {
        f.a = 1.0 - e2 * p.q * p.q / p.x;
        f.b = 1.0 - e2 / p.x;
        f.c = off;
        f.d = 0;
    }
    return f;
}

CMatrix twist_product(const EllipticParams& p, int M) {
    CMatrix F = CMatrix::Identity(4, 4);
    for (int m = 1; m <= M; ++m) F = F * elliptic_Fm(m, p).matrix();
    return F;
}

EllipticR elliptic_R(const EllipticParams& p) {
    check_disk(p.eps);
    if (std::abs(p.q) < kDegenerate) throw PoleAtPoint("q = 0");
    int M = p.M;
    if (M == 0) M = default_truncation(p.eps);
    if (M < 1 || M > kMaxFactors)
        throw InvalidInput(fmt::format("truncation M = {} outside 1..{}", M, kMaxFactors));
    cplx sx = p.root();
    if (std::abs(sx) < kDegenerate) throw PoleAtPoint("x = 0");

    CMatrix F = twist_product(p, M);
    CMatrix Ft = swap_tensor(twist_product(inverse_point(p), M));
    CMatrix R0 = trig_quantum_R(p.q, p.x, sx);

    EllipticR out;
    out.M = M;
    out.R = eight_vertex_inverse(Ft) * R0 * F;
    out.entries = {out.R(0, 0), out.R(1, 1), out.R(1, 2), out.R(0, 3)};
    const auto& e = out.entries;
    cplx norm = e.a - e.d;
    if (std::abs(norm) < kDegenerate) throw PoleAtPoint("a - d vanishes");
    out.ratios = {(e.a + e.d) / norm, 1.0, (e.b + e.c) / norm, (e.b - e.c) / norm};
    return out;
}

bool eight_vertex_sparse(const CMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool allowed = i == j || i + j == 3;
            if (!allowed && m(i, j) != 0.0) return false;
        }
    return m(0, 0) == m(3, 3) && m(1, 1) == m(2, 2) && m(1, 2) == m(2, 1) && m(0, 3) == m(3, 0);
}

double ybe_residual(const std::function<CMatrix(cplx)>& R_of_u, cplx u, cplx v) {
    CMatrix r12 = embed_tensor(R_of_u(u), 2, 0, 1);
    CMatrix r13 = embed_tensor(R_of_u(u + v), 2, 0, 2);
    CMatrix r23 = embed_tensor(R_of_u(v), 2, 1, 2);
    CMatrix lhs = r12 * r13 * r23;
    CMatrix rhs = r23 * r13 * r12;
    return (lhs - rhs).norm() / lhs.norm();
}

CMatrix elliptic_first_order(cplx q, cplx x, cplx sqrt_x) {
    auto F1 = [&](cplx s) {
        CMatrix m = CMatrix::Zero(4, 4);
        m(0, 3) = m(3, 0) = (1.0 / q - q) / s;
        return m;
    };
    CMatrix R0 = trig_quantum_R(q, x, sqrt_x);
    return R0 * F1(sqrt_x) - swap_tensor(F1(1.0 / sqrt_x)) * R0;
}

CMatrix principal_gauge(const CMatrix& r, cplx x) {
    CMatrix D = CMatrix::Identity(2, 2);
    D(1, 1) = std::sqrt(x);
    CMatrix G = kron(D, CMatrix::Identity(2, 2));
    CMatrix Gi = kron(D.inverse(), CMatrix::Identity(2, 2));
    return G * r * Gi;
}

ClassicalR elliptic_classical_r(cplx eps, int n_terms) {
    check_disk(eps);
    if (n_terms < 0) throw InvalidInput("n_terms must be >= 0");
    ClassicalR r;
    r.family = Family::EllipticSeries;
    r.name = fmt::format("elliptic sl(2), {} terms", n_terms);
    r.n = 2;
    r.threading = Threading::Additive;
    r.at = [eps, n_terms](cplx u) {
        const cplx I(0, 1);
        CMatrix s3 = unit_matrix(2, 1, 1) - unit_matrix(2, 2, 2);
        CMatrix sp = unit_matrix(2, 1, 2), sm = unit_matrix(2, 2, 1);
        CMatrix S33 = kron(s3, s3);
        CMatrix Xpm = kron(sp, sm) + kron(sm, sp);
        CMatrix Xpp = kron(sp, sp) + kron(sm, sm);
        cplx s = std::sin(M_PI * u);
        if (std::abs(s) < kDegenerate) throw PoleAtPoint("u is an integer");
        CMatrix out = (I / 2.0) * (0.5 * std::cos(M_PI * u) / s * S33 + (1.0 / s) * Xpm);
        for (int n = 1; n <= n_terms; ++n) {
            cplx e2n = std::pow(eps, 2 * n), eo = std::pow(eps, 2 * n - 1);
            cplx e4 = eo * eo;
            out += I * (-e2n / (1.0 + e2n)) * std::sin(2.0 * n * M_PI * u) * S33;
            cplx so = std::sin((2.0 * n - 1) * M_PI * u);
            out += 2.0 * I * so / (1.0 - e4) * (e4 * Xpm + eo * Xpp);
        }
        return out;
    };
    return r;
}

} // namespace qgf
