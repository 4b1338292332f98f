#include "qgf/linalg.hpp"

namespace qgf {

namespace {

std::size_t cost(const Scalar& s) {
    std::size_t c = s.numerator().size();
    for (auto& [id, k] : s.den_factors()) c += factor_poly(id).size() * k;
    return c;
}

// Row reduces a in place to reduced row echelon form; returns pivot columns.
// Column choice is left to right; within a column the cheapest pivot wins.
std::vector<int> rref(Matrix& a, int ncols, Scalar* det = nullptr) {
    int rows = (int)a.size();
    std::vector<int> piv;
    int r = 0;
    Scalar d(1);
    for (int c = 0; c < ncols && r < rows; ++c) {
        int best = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero() && (best < 0 || cost(a[i][c]) < cost(a[best][c]))) best = i;
        if (best < 0) {
            d = Scalar();
            continue;
        }
        if (best != r) {
            std::swap(a[best], a[r]);
            d = -d;
        }
        Scalar p = a[r][c];
        d = d * p;
        Scalar pinv = p.inverse();
        for (auto& x : a[r])
            if (!x.is_zero()) x = x * pinv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (std::size_t j = 0; j < a[i].size(); ++j)
                if (!a[r][j].is_zero()) a[i][j] = a[i][j] - f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    if (r < ncols) d = Scalar();
    if (det) *det = d;
    return piv;
}

} // namespace

Matrix identity_matrix(int n) {
    Matrix m(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    int n = (int)a.size(), k = (int)b.size(), m = b.empty() ? 0 : (int)b[0].size();
    Matrix r(n, std::vector<Scalar>(m));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

bool is_identity(const Matrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (i == j ? !m[i][j].is_one() && !(m[i][j] == Scalar(1)) : !m[i][j].is_zero())
                return false;
    return true;
}

bool matrices_equal(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != b[i][j]) return false;
    }
    return true;
}

Matrix substituted(const Matrix& m, const Substitution& s) {
    Matrix r = m;
    for (auto& row : r)
        for (auto& x : row) x = s.apply(x);
    return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
    int n = (int)m.size();
    Matrix a(n);
    for (int i = 0; i < n; ++i) {
        a[i] = m[i];
        a[i].resize(2 * n);
        a[i][n + i] = 1;
    }
    auto piv = rref(a, n);
    if ((int)piv.size() < n) return std::nullopt;
    Matrix r(n);
    for (int i = 0; i < n; ++i) r[i].assign(a[i].begin() + n, a[i].end());
    return r;
}

Scalar determinant(const Matrix& m) {
    Matrix a = m;
    Scalar d;
    rref(a, (int)m.size(), &d);
    return d;
}

int rank(const Matrix& m) {
    if (m.empty()) return 0;
    Matrix a = m;
    return (int)rref(a, (int)m[0].size()).size();
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
    if (m.empty()) return {};
    int ncols = (int)m[0].size();
    Matrix a = m;
    auto piv = rref(a, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Scalar> v(ncols);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        basis.push_back(v);
    }
    return basis;
}

} // namespace qgf
