#pragma once

#include <cstddef>
#include <vector>

#include "dtori/error.hpp"
#include "dtori/linalg.hpp"
#include "dtori/matrix.hpp"
#include "dtori/rational.hpp"

namespace dtori {

struct HermiteResult {
  IntegerMatrix h;  // row-style Hermite normal form of the input
  IntegerMatrix u;  // unimodular, h = u * a
};

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// row(target) -= factor * row(source), applied to both h and u.
inline void axpy_rows(IntegerMatrix& h, IntegerMatrix& u, std::size_t target,
                      std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < h.cols(); ++j) h(target, j) -= factor * h(source, j);
  for (std::size_t j = 0; j < u.cols(); ++j) u(target, j) -= factor * u(source, j);
}

}  // namespace detail

/// Row-style Hermite normal form: echelon with leftmost pivots, pivots
/// positive, entries above a pivot reduced into [0, pivot). The pivot row for
/// each elimination step is the one with the smallest nonzero absolute value,
/// smallest row index on ties.
inline HermiteResult row_hnf(const IntegerMatrix& a) {
  HermiteResult out{a, IntegerMatrix::identity(a.rows())};
  IntegerMatrix& h = out.h;
  IntegerMatrix& u = out.u;
  const std::size_t m = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
    bool found = false;
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (best == m || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == m) break;
      found = true;
      h.swap_rows(best, r);
      u.swap_rows(best, r);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        detail::axpy_rows(h, u, i, r, detail::floor_div(h(i, c), h(r, c)));
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (!found) continue;
    if (h(r, c) < 0) {
      for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i)
      detail::axpy_rows(h, u, i, r, detail::floor_div(h(i, c), h(r, c)));
    ++r;
  }
  return out;
}

/// Lattice basis (as rows) of {x in Z^cols : m x = 0}.
inline IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntegerMatrix::identity(n);
  const HermiteResult res = row_hnf(m.transpose());
  std::size_t rank = 0;
  for (std::size_t i = 0; i < res.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < res.h.cols(); ++j)
      if (res.h(i, j) != 0) zero = false;
    if (!zero) rank = i + 1;
  }
  return res.u.block(rank, 0, n - rank, n);
}

/// Extends the rows of a basis of a saturated sublattice of Z^n to a matrix
/// in GL(n, Z) whose leading rows are the input, verbatim.
inline IntegerMatrix complete_to_unimodular(const IntegerMatrix& rows) {
  const std::size_t k = rows.rows();
  const std::size_t n = rows.cols();
  if (k == 0) return IntegerMatrix::identity(n);
  if (k > n) fail(ErrorCode::NotSaturated, "more rows than ambient dimension");

  // u * rows^T = h; saturation (with independence) is exactly h = [I; 0],
  // and then rows = [I | 0] * (u^T)^{-1}.
  const HermiteResult res = row_hnf(rows.transpose());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (res.h(i, j) != (i == j ? 1 : 0))
        fail(ErrorCode::NotSaturated,
             "row lattice is not a direct summand of Z^n");
  return to_integer(invert(to_rational(res.u.transpose())));
}

/// Basis of (row span over Q) ∩ Z^n for an integer matrix of full row rank.
inline IntegerMatrix saturate(const IntegerMatrix& rows) {
  const std::size_t n = rows.cols();
  const IntegerMatrix k = integer_kernel(rows);
  if (k.rows() == 0) return IntegerMatrix::identity(n);
  return integer_kernel(k);
}

/// Scales a rational vector to the primitive integer vector on the same ray.
inline std::vector<Integer> primitive_vector(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Integer z = q.get_num() * (l / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    out.push_back(z);
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

}  // namespace dtori
