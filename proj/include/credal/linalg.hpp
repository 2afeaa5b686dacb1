#pragma once

// Small exact linear-algebra kernels (row reduction over Rational) used by the
// polytope routines.

#include <cstddef>
#include <optional>
#include <vector>

#include "credal/rational.hpp"

namespace credal::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, all rows of equal length

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order; rows past the rank are left zero.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational p = m[row][col];
    for (auto& v : m[row])
      if (!v.is_zero()) v /= p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < m[i].size(); ++j)
        if (!m[row][j].is_zero()) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).size();
}

/// Basis of {x : m x = 0}; `ncols` is needed when m has no rows.
inline Matrix null_space(Matrix m, std::size_t ncols) {
  const auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(ncols, Rational());
    v[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the (possibly overdetermined) system [A | b] for a unique x.
/// Returns nullopt when the system is inconsistent or has free variables.
inline std::optional<Vector> solve_unique(Matrix augmented, std::size_t nvars) {
  const auto pivots = rref(augmented, nvars + 1);
  if (pivots.size() != nvars) return std::nullopt;  // rank deficient or inconsistent (pivot on rhs)
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] != r) return std::nullopt;
  Vector x(nvars);
  for (std::size_t r = 0; r < nvars; ++r) x[r] = augmented[r][nvars];
  return x;
}

inline Rational dot(const Vector& a, const Vector& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

}  // namespace credal::linalg
