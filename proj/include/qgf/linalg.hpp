#pragma once

// Dense exact linear algebra over the Scalar field.

#include <optional>
#include <vector>

#include "qgf/scalars.hpp"

namespace qgf {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);
bool is_identity(const Matrix& m);
bool matrices_equal(const Matrix& a, const Matrix& b);
Matrix substituted(const Matrix& m, const Substitution& s);

// Gauss-Jordan with smallest-term pivoting; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);
Scalar determinant(const Matrix& m);
int rank(const Matrix& m);
// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

} // namespace qgf
