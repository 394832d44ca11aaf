#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dtori/dirac.hpp"
#include "dtori/error.hpp"
#include "dtori/linalg.hpp"
#include "dtori/matrix.hpp"

namespace dtori {

/// Gram matrix [[0, I], [I, 0]] of twice the pairing.
inline RationalMatrix split_form(std::size_t n) {
  RationalMatrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1;
    j(n + i, i) = 1;
  }
  return j;
}

/// An element of O(n,n|Q): a 2n × 2n matrix g with g^T J g = J, acting on
/// column vectors (X; xi).
class GroupElement {
 public:
  static GroupElement from_matrix(const RationalMatrix& m, std::size_t n) {
    require_dims(m.rows() == 2 * n && m.cols() == 2 * n,
                 "group element must be " + std::to_string(2 * n) + "x" +
                     std::to_string(2 * n));
    const RationalMatrix j = split_form(n);
    if (m.transpose() * j * m != j)
      fail(ErrorCode::NotOrthogonal, "matrix does not preserve the split form");
    return GroupElement(n, m);
  }

  static GroupElement identity(std::size_t n) {
    return GroupElement(n, RationalMatrix::identity(2 * n));
  }

  std::size_t n() const noexcept { return n_; }
  const RationalMatrix& matrix() const noexcept { return matrix_; }

  RationalMatrix a() const { return matrix_.block(0, 0, n_, n_); }
  RationalMatrix b() const { return matrix_.block(0, n_, n_, n_); }
  RationalMatrix c() const { return matrix_.block(n_, 0, n_, n_); }
  RationalMatrix d() const { return matrix_.block(n_, n_, n_, n_); }

  bool integral() const { return is_integral(matrix_); }

  Rational determinant() const { return dtori::determinant(matrix_); }

  /// g^{-1} = J g^T J.
  GroupElement inverse() const {
    const RationalMatrix j = split_form(n_);
    return GroupElement(n_, j * matrix_.transpose() * j);
  }

  /// Composition: (g * h) applies h first.
  friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    require_dims(g.n_ == h.n_, "composing group elements of different n");
    return GroupElement(g.n_, g.matrix_ * h.matrix_);
  }

  friend bool operator==(const GroupElement& g, const GroupElement& h) {
    return g.n_ == h.n_ && g.matrix_ == h.matrix_;
  }

 private:
  GroupElement(std::size_t n, RationalMatrix m) : n_(n), matrix_(std::move(m)) {}

  std::size_t n_ = 0;
  RationalMatrix matrix_;
};

/// Exchanges e_i with f_i for every i in `indices` (1-based).
inline GroupElement sigma(const std::vector<std::size_t>& indices, std::size_t n) {
  RationalMatrix m = RationalMatrix::identity(2 * n);
  std::vector<bool> chosen(n, false);
  for (auto i : indices) {
    if (i < 1 || i > n)
      fail(ErrorCode::IndexOutOfRange,
           "sigma index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    chosen[i - 1] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!chosen[i]) continue;
    m(i, i) = 0;
    m(n + i, n + i) = 0;
    m(i, n + i) = 1;
    m(n + i, i) = 1;
  }
  return GroupElement::from_matrix(m, n);
}

/// diag(A, (A^T)^{-1}) for A in GL(n, Z).
inline GroupElement rho(const IntegerMatrix& a) {
  require_dims(a.is_square(), "rho needs a square matrix");
  const std::size_t n = a.rows();
  const Integer det = determinant(a);
  if (det != 1 && det != -1)
    fail(ErrorCode::NotUnimodular, "rho needs det ±1, got " + det.get_str());
  const RationalMatrix ar = to_rational(a);
  RationalMatrix m(2 * n, 2 * n);
  m.set_block(0, 0, ar);
  m.set_block(n, n, invert(ar.transpose()));
  return GroupElement::from_matrix(m, n);
}

/// (x, y) ↦ (x + N y, y) for integer skew N.
inline GroupElement nu(const IntegerMatrix& n_mat) {
  if (!is_skew(n_mat)) fail(ErrorCode::NotSkew, "nu needs a skew-symmetric matrix");
  const std::size_t n = n_mat.rows();
  RationalMatrix m = RationalMatrix::identity(2 * n);
  m.set_block(0, n, to_rational(n_mat));
  return GroupElement::from_matrix(m, n);
}

/// The shift sending f_i to f_i + e_j and f_j to f_j - e_i (1-based, i < j).
inline GroupElement nu_elementary(std::size_t i, std::size_t j, std::size_t n) {
  if (i < 1 || j > n || i >= j)
    fail(ErrorCode::IndexOutOfRange, "nu_elementary needs 1 <= i < j <= n");
  IntegerMatrix nm(n, n);
  nm(j - 1, i - 1) = 1;
  nm(i - 1, j - 1) = -1;
  return nu(nm);
}

inline bool is_special(const GroupElement& g) { return g.determinant() == 1; }

/// g(Gamma): rows transform as B ↦ B g^T.
inline DiracStructure act(const GroupElement& g, const DiracStructure& gamma) {
  require_dims(g.n() == gamma.n(), "group element and structure differ in n");
  return DiracStructure::from_basis(gamma.basis() * g.matrix().transpose());
}

/// (A Pi + B)(C Pi + D)^{-1}; undefined (SingularDenominator) when
/// C Pi + D is singular.
inline RationalMatrix frac_linear(const GroupElement& g, const RationalMatrix& pi) {
  require_dims(pi.is_square() && pi.rows() == g.n(), "Poisson matrix dimension");
  require_skew(pi, "Poisson matrix");
  RationalMatrix denom_inv;
  try {
    denom_inv = invert(g.c() * pi + g.d());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    fail(ErrorCode::SingularDenominator, "C*Pi + D is singular");
  }
  RationalMatrix out = (g.a() * pi + g.b()) * denom_inv;
  if (!is_skew(out))
    throw std::logic_error("fractional-linear image is not skew; group element invalid");
  return out;
}

}  // namespace dtori
