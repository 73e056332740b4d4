#pragma once

#include "gtl/rational.hpp"

#include <optional>
#include <vector>

namespace gtl {

using Vector = std::vector<Rational>;
/// Row-major dense matrix; every row has the same length.
using Matrix = std::vector<Vector>;

/// Rank by fraction-free (Bareiss) elimination on the cleared-denominator
/// integer matrix.
int rank(const Matrix& a);
int rank(std::vector<std::vector<Integer>> a);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& a);

/// Basis of {x : a x = 0}, one vector per free column in increasing order.
std::vector<Vector> kernel(const Matrix& a, int cols);

/// Some x with a x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b, int cols);

}  // namespace gtl
