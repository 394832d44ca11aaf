#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dtori/dirac.hpp"
#include "dtori/error.hpp"
#include "dtori/matrix.hpp"
#include "dtori/poissonize.hpp"
#include "dtori/rational.hpp"

namespace dtori {

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using MultiIndex = std::vector<std::int64_t>;

/// The unit complex number e^{πiq}, with q kept exactly and reduced into [0, 2).
class ExactPhase {
 public:
  ExactPhase() = default;
  explicit ExactPhase(const Rational& q) : value_(mod_into(q, 2)) {}

  const Rational& value() const noexcept { return value_; }

  Complex to_complex() const {
    // Quarter turns are returned exactly.
    if (value_ == 0) return {1.0, 0.0};
    if (value_ == rat(1, 2)) return {0.0, 1.0};
    if (value_ == 1) return {-1.0, 0.0};
    if (value_ == rat(3, 2)) return {0.0, -1.0};
    const double angle = std::numbers::pi * value_.get_d();
    return {std::cos(angle), std::sin(angle)};
  }

  friend ExactPhase operator+(const ExactPhase& a, const ExactPhase& b) {
    return ExactPhase(a.value_ + b.value_);
  }
  friend bool operator==(const ExactPhase& a, const ExactPhase& b) {
    return a.value_ == b.value_;
  }

 private:
  Rational value_ = 0;
};

/// A constant Poisson bivector Pi on T^n, as an exactly skew rational matrix.
class PoissonMatrix {
 public:
  PoissonMatrix() = default;
  explicit PoissonMatrix(RationalMatrix entries) : entries_(std::move(entries)) {
    require_skew(entries_, "Poisson matrix");
  }

  static PoissonMatrix zero(std::size_t n) { return PoissonMatrix(RationalMatrix(n, n)); }

  std::size_t n() const noexcept { return entries_.rows(); }
  const RationalMatrix& entries() const noexcept { return entries_; }

  /// Pi(r, s) = sum_{j,k} Pi_jk r_j s_k.
  Rational bilinear(const MultiIndex& r, const MultiIndex& s) const {
    require_dims(r.size() == n() && s.size() == n(), "multi-index length");
    Rational total = 0;
    for (std::size_t j = 0; j < n(); ++j) {
      if (r[j] == 0) continue;
      for (std::size_t k = 0; k < n(); ++k) {
        if (s[k] == 0) continue;
        total += entries_(j, k) * Rational(static_cast<long>(r[j] * s[k]));
      }
    }
    return total;
  }

  friend bool operator==(const PoissonMatrix& a, const PoissonMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  RationalMatrix entries_;
};

/// Finitely supported Fourier series sum_r c_r e_r. Zero coefficients are
/// never stored.
class FourierPolynomial {
 public:
  FourierPolynomial() = default;
  explicit FourierPolynomial(std::size_t n) : n_(n) {}

  static FourierPolynomial monomial(const MultiIndex& r, Complex c = {1.0, 0.0}) {
    FourierPolynomial f(r.size());
    f.add(r, c);
    return f;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<MultiIndex, Complex>& terms() const noexcept { return terms_; }

  Complex coefficient(const MultiIndex& r) const {
    auto it = terms_.find(r);
    return it == terms_.end() ? Complex{} : it->second;
  }

  void add(const MultiIndex& r, Complex c) {
    require_dims(r.size() == n_, "multi-index length");
    auto [it, inserted] = terms_.try_emplace(r, c);
    if (!inserted) it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }

  /// Removes coefficients with magnitude below `threshold`.
  void prune(double threshold) {
    std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < threshold; });
  }

 private:
  std::size_t n_ = 0;
  std::map<MultiIndex, Complex> terms_;
};

inline constexpr double kCoefficientDropThreshold = 1e-15;

/// Exact phase of e_r * e_s, i.e. e^{-πi ħ Pi(r,s)}.
inline ExactPhase star_phase(const PoissonMatrix& pi, const MultiIndex& r, const MultiIndex& s,
                             const Rational& hbar = 1) {
  return ExactPhase(-hbar * pi.bilinear(r, s));
}

/// Bilinear extension of e_r * e_s = e^{-πiħ Pi(r,s)} e_{r+s}.
inline FourierPolynomial star(const FourierPolynomial& f, const FourierPolynomial& g,
                              const PoissonMatrix& pi, const Rational& hbar = 1) {
  require_dims(f.n() == g.n() && f.n() == pi.n(), "star product operands differ in n");
  FourierPolynomial out(f.n());
  MultiIndex sum(f.n());
  for (const auto& [r, fr] : f.terms())
    for (const auto& [s, gs] : g.terms()) {
      for (std::size_t k = 0; k < f.n(); ++k) sum[k] = r[k] + s[k];
      out.add(sum, fr * gs * star_phase(pi, r, s, hbar).to_complex());
    }
  out.prune(kCoefficientDropThreshold);
  return out;
}

/// rho with eps_j eps_i = e^{πi rho} eps_i eps_j, where eps_i = e_{f_i}.
/// Equal to 2ħ Pi_ij mod 2.
inline ExactPhase commutator_ratio(const PoissonMatrix& pi, std::size_t i, std::size_t j,
                                   const Rational& hbar = 1) {
  const std::size_t n = pi.n();
  if (i < 1 || i > n || j < 1 || j > n)
    fail(ErrorCode::IndexOutOfRange, "generator index outside 1.." + std::to_string(n));
  MultiIndex ei(n, 0), ej(n, 0);
  ei[i - 1] = 1;
  ej[j - 1] = 1;
  // (e_j * e_i) / (e_i * e_j)
  return ExactPhase(star_phase(pi, ej, ei, hbar).value() - star_phase(pi, ei, ej, hbar).value());
}

/// Commutation data of the n unitary generators of the crossed product for
/// the transversal R^{I'}: the Poisson matrix of sigma_I(Gamma).
inline PoissonMatrix commutation_matrix(const DiracStructure& gamma,
                                        const std::vector<std::size_t>& i_set) {
  return PoissonMatrix(to_poisson(gamma, i_set));
}

struct ClockShiftRep {
  Integer p;
  Integer q;
  ComplexMatrix u;  // diag(omega^k), omega = e^{2πi p/q}
  ComplexMatrix v;  // e_k ↦ e_{k+1 mod q}

  /// max |(VU - e^{-2πip/q} UV)_{ab}|
  double relation_residual() const {
    const Rational angle = rat(-2 * p, q);
    const Complex w = ExactPhase(angle).to_complex();
    const ComplexMatrix lhs = v * u;
    const ComplexMatrix rhs = w * (u * v);
    return max_abs(lhs - rhs);
  }

  /// max over U, V of max |(X^* X - I)_{ab}|
  double unitarity_residual() const {
    return std::max(max_abs(adjoint(u) * u - ComplexMatrix::identity(u.rows())),
                    max_abs(adjoint(v) * v - ComplexMatrix::identity(v.rows())));
  }

  static ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix a(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) a(j, i) = std::conj(m(i, j));
    return a;
  }

  static double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& z : m.data()) best = std::max(best, std::abs(z));
    return best;
  }
};

inline ClockShiftRep clock_shift(const Integer& p, const Integer& q) {
  if (q < 1) fail(ErrorCode::InvalidArgument, "q must be positive");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) fail(ErrorCode::NotCoprime, "gcd(" + p.get_str() + ", " + q.get_str() + ") != 1");
  if (!q.fits_ulong_p() || q > 4096) fail(ErrorCode::InvalidArgument, "q too large");
  const std::size_t size = q.get_ui();
  ClockShiftRep rep{p, q, ComplexMatrix(size, size), ComplexMatrix(size, size)};
  for (std::size_t k = 0; k < size; ++k) {
    // omega^k = e^{πi (2pk/q mod 2)}
    rep.u(k, k) = ExactPhase(rat(2 * p * Integer(static_cast<unsigned long>(k)), q)).to_complex();
    rep.v((k + 1) % size, k) = 1.0;
  }
  return rep;
}

/// A computable label for the quantization of Gamma: parity, nullity and the
/// Poissonized matrix for the default transversal with entries mod 1. Two
/// structures with the same quantization may carry different labels.
struct QuantizationDescriptor {
  Parity parity = Parity::Even;
  std::size_t nullity = 0;
  TransversalChoice transversal;
  RationalMatrix theta_reduced;
};

inline QuantizationDescriptor descriptor(const DiracStructure& gamma) {
  QuantizationDescriptor d;
  const CharacteristicData cd = characteristic(gamma);
  d.parity = cd.parity;
  d.nullity = cd.nullity;
  d.transversal = find_transversal(gamma);
  d.theta_reduced = to_poisson(gamma, d.transversal.i_set);
  for (std::size_t i = 0; i < d.theta_reduced.rows(); ++i)
    for (std::size_t j = 0; j < d.theta_reduced.cols(); ++j)
      d.theta_reduced(i, j) = mod_into(d.theta_reduced(i, j), 1);
  return d;
}

}  // namespace dtori
