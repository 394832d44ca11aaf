#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtori/error.hpp"
#include "dtori/matrix.hpp"
#include "dtori/rational.hpp"

namespace dtori {

struct RrefResult {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination over Q. The pivot in each column is taken from
/// the first row with a nonzero entry, so the output is deterministic (and
/// unique anyway, being the RREF).
inline RrefResult rref(const RationalMatrix& m) {
  RrefResult out{m, {}};
  RationalMatrix& r = out.reduced;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < r.cols() && lead < r.rows(); ++c) {
    std::size_t p = lead;
    while (p < r.rows() && r(p, c) == 0) ++p;
    if (p == r.rows()) continue;
    r.swap_rows(p, lead);
    const Rational inv = 1 / r(lead, c);
    for (std::size_t j = c; j < r.cols(); ++j) r(lead, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead || r(i, c) == 0) continue;
      const Rational f = r(i, c);
      for (std::size_t j = c; j < r.cols(); ++j) r(i, j) -= f * r(lead, j);
    }
    out.pivot_columns.push_back(c);
    ++lead;
  }
  return out;
}

inline std::size_t rank(const RationalMatrix& m) {
  return rref(m).pivot_columns.size();
}

inline Rational determinant(const RationalMatrix& m) {
  require_dims(m.is_square(), "determinant of non-square matrix");
  RationalMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

inline Integer determinant(const IntegerMatrix& m) {
  return determinant(to_rational(m)).get_num();
}

/// Exact inverse. Throws Singular when the matrix has a nontrivial kernel.
inline RationalMatrix invert(const RationalMatrix& m) {
  require_dims(m.is_square(), "inverse of non-square matrix");
  const std::size_t n = m.rows();
  const RrefResult r = rref(hstack(m, RationalMatrix::identity(n)));
  if (r.pivot_columns.size() < n || (n > 0 && r.pivot_columns[n - 1] != n - 1))
    fail(ErrorCode::Singular, "matrix is singular");
  return r.reduced.block(0, n, n, n);
}

/// A linear subspace of Q^d, represented by the RREF of any basis. Two
/// subspaces are equal exactly when their stored bases are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(const RationalMatrix& rows) {
    RrefResult r = rref(rows);
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = r.reduced.block(0, 0, r.pivot_columns.size(), rows.cols());
    s.pivots_ = std::move(r.pivot_columns);
    return s;
  }

  static Subspace zero(std::size_t ambient) {
    return span(RationalMatrix(0, ambient));
  }

  static Subspace full(std::size_t ambient) {
    return span(RationalMatrix::identity(ambient));
  }

  /// span{e_i : i in indices}, 0-based.
  static Subspace coordinate(std::size_t ambient,
                             const std::vector<std::size_t>& indices) {
    RationalMatrix rows(indices.size(), ambient);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] >= ambient)
        fail(ErrorCode::IndexOutOfRange, "coordinate index out of range");
      rows(k, indices[k]) = 1;
    }
    return span(rows);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const RationalMatrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivot_columns() const noexcept { return pivots_; }

  bool contains(std::span<const Rational> v) const {
    require_dims(v.size() == ambient_, "vector/subspace dimension mismatch");
    RationalMatrix extended = basis_;
    RationalMatrix row(1, ambient_);
    for (std::size_t j = 0; j < ambient_; ++j) row(0, j) = v[j];
    return rank(vstack(extended, row)) == dim();
  }

  bool contains(const Subspace& other) const {
    require_dims(other.ambient_ == ambient_, "subspace dimension mismatch");
    return rank(vstack(basis_, other.basis_)) == dim();
  }

  /// {xi : <xi, x> = 0 for all x in this}, as a subspace of the dual space.
  Subspace annihilator() const;

  bool intersects_trivially(const Subspace& other) const {
    require_dims(other.ambient_ == ambient_, "subspace dimension mismatch");
    return rank(vstack(basis_, other.basis_)) == dim() + other.dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  RationalMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {x : m x = 0} in Q^cols.
inline Subspace kernel(const RationalMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RationalMatrix basis(free_cols.size(), m.cols());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(k, f) = 1;
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
      basis(k, r.pivot_columns[i]) = -r.reduced(i, f);
  }
  return Subspace::span(basis);
}

inline Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(ambient_);
  return kernel(basis_);
}

}  // namespace dtori
