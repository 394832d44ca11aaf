#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dtori/error.hpp"
#include "dtori/linalg.hpp"
#include "dtori/matrix.hpp"
#include "dtori/rational.hpp"

namespace dtori {

/// Symmetric pairing on Q^n ⊕ (Q^n)*:
///   (X1 + xi1, X2 + xi2) = 1/2 (<xi1, X2> + <xi2, X1>).
/// Vectors are laid out as (X; xi), each half of length n.
inline Rational pairing(std::span<const Rational> v, std::span<const Rational> w) {
  require_dims(v.size() == w.size() && v.size() % 2 == 0,
               "pairing needs two vectors of equal even length");
  const std::size_t n = v.size() / 2;
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) s += v[n + i] * w[i] + w[n + i] * v[i];
  return s / 2;
}

/// A maximal isotropic subspace of Q^n ⊕ (Q^n)*. The basis is stored as an
/// n × 2n matrix in RREF, columns [X-block | xi-block]; each row is the
/// transpose of a basis vector. Canonical, so equality is matrix equality.
class DiracStructure {
 public:
  /// Validates and canonicalizes any spanning set of rows.
  static DiracStructure from_basis(const RationalMatrix& rows) {
    require_dims(rows.cols() % 2 == 0, "Dirac basis needs an even number of columns");
    const std::size_t n = rows.cols() / 2;
    const RrefResult r = rref(rows);
    const std::size_t rk = r.pivot_columns.size();
    RationalMatrix canonical = r.reduced.block(0, 0, rk, rows.cols());
    const RationalMatrix a = canonical.block(0, 0, rk, n);
    const RationalMatrix b = canonical.block(0, n, rk, n);
    const RationalMatrix sym = a * b.transpose() + b * a.transpose();
    if (rk > n || !sym.is_zero())
      fail(ErrorCode::NotIsotropic, "subspace is not isotropic for the pairing");
    if (rk < n)
      fail(ErrorCode::NotMaximal, "subspace has dimension " + std::to_string(rk) +
                                      " < " + std::to_string(n));
    return DiracStructure(n, std::move(canonical));
  }

  std::size_t n() const noexcept { return n_; }
  const RationalMatrix& basis() const noexcept { return basis_; }
  RationalMatrix x_block() const { return basis_.block(0, 0, n_, n_); }
  RationalMatrix xi_block() const { return basis_.block(0, n_, n_, n_); }

  /// Stable text key of the canonical basis, used for hashing.
  std::string key() const {
    std::string k = std::to_string(n_) + ':';
    for (const auto& q : basis_.data()) {
      k += q.get_str();
      k += ',';
    }
    return k;
  }

  friend bool operator==(const DiracStructure& a, const DiracStructure& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  DiracStructure(std::size_t n, RationalMatrix basis)
      : n_(n), basis_(std::move(basis)) {}

  std::size_t n_ = 0;
  RationalMatrix basis_;
};

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct CharacteristicData {
  Subspace characteristic;  // C = {X : (X, 0) in Gamma}
  std::size_t nullity = 0;
  Parity parity = Parity::Even;
};

inline void require_skew(const RationalMatrix& m, const char* what) {
  if (!is_skew(m)) fail(ErrorCode::NotSkew, std::string(what) + " is not skew-symmetric");
}

/// Graph {(Pi xi, xi)} of a constant Poisson bivector; basis [-Pi | I].
inline DiracStructure graph_poisson(const RationalMatrix& pi) {
  require_skew(pi, "Poisson matrix");
  const std::size_t n = pi.rows();
  return DiracStructure::from_basis(hstack(pi.transpose(), RationalMatrix::identity(n)));
}

/// Graph {(X, bX)} of a constant 2-form; basis [I | -b].
inline DiracStructure graph_two_form(const RationalMatrix& b) {
  require_skew(b, "2-form matrix");
  const std::size_t n = b.rows();
  return DiracStructure::from_basis(hstack(RationalMatrix::identity(n), b.transpose()));
}

/// F ⊕ F°.
inline DiracStructure foliation(const Subspace& f) {
  const std::size_t n = f.ambient_dim();
  const Subspace ann = f.annihilator();
  RationalMatrix rows(n, 2 * n);
  rows.set_block(0, 0, f.basis());
  rows.set_block(f.dim(), n, ann.basis());
  return DiracStructure::from_basis(rows);
}

inline CharacteristicData characteristic(const DiracStructure& gamma) {
  // (X, 0) = c [A | B] with c B = 0, i.e. c ranges over ker(B^T).
  const Subspace left = kernel(gamma.xi_block().transpose());
  CharacteristicData out;
  out.characteristic = Subspace::span(left.basis() * gamma.x_block());
  out.nullity = out.characteristic.dim();
  out.parity = out.nullity % 2 == 0 ? Parity::Even : Parity::Odd;
  return out;
}

inline std::size_t nullity(const DiracStructure& gamma) {
  return gamma.n() - rank(gamma.xi_block());
}

/// Projection of Gamma to the dual summand.
inline Subspace p_star(const DiracStructure& gamma) {
  return Subspace::span(gamma.xi_block());
}

inline bool is_poisson(const DiracStructure& gamma) { return nullity(gamma) == 0; }

inline bool equals(const DiracStructure& a, const DiracStructure& b) {
  require_dims(a.n() == b.n(), "comparing Dirac structures of different dimension");
  return a == b;
}

}  // namespace dtori
