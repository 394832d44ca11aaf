#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dtori/dirac.hpp"
#include "dtori/error.hpp"
#include "dtori/hnf.hpp"
#include "dtori/linalg.hpp"
#include "dtori/matrix.hpp"
#include "dtori/onn.hpp"

namespace dtori {

/// A coordinate transversal: the subset I (1-based, ascending) whose sigma
/// Poissonizes Gamma, its complement I', and the renumbering I' first, then I.
struct TransversalChoice {
  std::vector<std::size_t> i_set;
  std::vector<std::size_t> i_prime;
  std::vector<std::size_t> permutation;  // 0-based, I' ascending then I ascending

  std::size_t k() const noexcept { return i_set.size(); }
};

inline TransversalChoice make_transversal(std::vector<std::size_t> i_set, std::size_t n) {
  std::sort(i_set.begin(), i_set.end());
  i_set.erase(std::unique(i_set.begin(), i_set.end()), i_set.end());
  TransversalChoice t;
  std::vector<bool> in(n, false);
  for (auto i : i_set) {
    if (i < 1 || i > n)
      fail(ErrorCode::IndexOutOfRange, "index " + std::to_string(i) + " outside 1.." +
                                           std::to_string(n));
    in[i - 1] = true;
  }
  t.i_set = std::move(i_set);
  for (std::size_t i = 1; i <= n; ++i)
    if (!in[i - 1]) t.i_prime.push_back(i);
  for (auto i : t.i_prime) t.permutation.push_back(i - 1);
  for (auto i : t.i_set) t.permutation.push_back(i - 1);
  return t;
}

inline std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(i - 1);
  return out;
}

/// R^{I'} ∩ C = {0}.
inline bool is_complementary(const Subspace& c, const TransversalChoice& t) {
  const Subspace coord = Subspace::coordinate(c.ambient_dim(), to_zero_based(t.i_prime));
  return c.intersects_trivially(coord);
}

/// I is the pivot set of the RREF basis of C(Gamma).
inline TransversalChoice find_transversal(const DiracStructure& gamma) {
  const CharacteristicData cd = characteristic(gamma);
  std::vector<std::size_t> idx;
  for (auto p : cd.characteristic.pivot_columns()) idx.push_back(p + 1);
  return make_transversal(std::move(idx), gamma.n());
}

/// The Poisson matrix whose graph is sigma_I(Gamma). Throws NotPoisson when
/// sigma_I(Gamma) has positive nullity.
inline RationalMatrix to_poisson(const DiracStructure& gamma,
                                 const std::vector<std::size_t>& i_set) {
  const DiracStructure moved = act(sigma(i_set, gamma.n()), gamma);
  RationalMatrix xi_inv;
  try {
    xi_inv = invert(moved.xi_block());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    fail(ErrorCode::NotPoisson,
         "sigma_I(Gamma) has nullity " + std::to_string(nullity(moved)) +
             ", so R^I' is not complementary to C(Gamma)");
  }
  // Left-normalize to [-Pi | I].
  return -(xi_inv * moved.x_block());
}

/// Transverse Poisson structure and holonomy for a coordinate transversal.
struct SplitData {
  TransversalChoice transversal;
  RationalMatrix pi_m;       // (n-k) × (n-k), on R^{I'}
  RationalMatrix beta;       // (n-k) × k, X_{I'} = beta X_I on C(Gamma)
  RationalMatrix beta_mod1;  // beta entries in [0, 1)
  RationalMatrix poisson;    // to_poisson(Gamma, I), original coordinates
};

inline SplitData split_blocks(const DiracStructure& gamma, const std::vector<std::size_t>& i_set) {
  const std::size_t n = gamma.n();
  SplitData out;
  out.transversal = make_transversal(i_set, n);
  out.poisson = to_poisson(gamma, out.transversal.i_set);

  const CharacteristicData cd = characteristic(gamma);
  if (cd.nullity != out.transversal.k())
    fail(ErrorCode::InvalidArgument,
         "|I| = " + std::to_string(out.transversal.k()) + " differs from nullity " +
             std::to_string(cd.nullity));

  const auto ip = to_zero_based(out.transversal.i_prime);
  const auto ii = to_zero_based(out.transversal.i_set);
  const RationalMatrix& cb = cd.characteristic.basis();  // k × n
  const RationalMatrix on_i = cb.select_columns(ii);      // k × k
  const RationalMatrix on_ip = cb.select_columns(ip);     // k × (n-k)
  if (out.transversal.k() == 0) {
    out.beta = RationalMatrix(ip.size(), 0);
  } else {
    out.beta = on_ip.transpose() * invert(on_i.transpose());
  }
  out.pi_m = out.poisson.select(ip, ip);
  out.beta_mod1 = out.beta;
  for (std::size_t r = 0; r < out.beta.rows(); ++r)
    for (std::size_t c = 0; c < out.beta.cols(); ++c)
      out.beta_mod1(r, c) = mod_into(out.beta(r, c), 1);
  return out;
}

/// A ∈ GL(n, Z) with A·w equal to the coordinate subspace on the first dim(w)
/// axes.
inline IntegerMatrix normalize_complement(const Subspace& w) {
  const std::size_t n = w.ambient_dim();
  IntegerMatrix primitive(w.dim(), n);
  for (std::size_t r = 0; r < w.dim(); ++r) {
    const auto v = primitive_vector(w.basis().row(r));
    for (std::size_t c = 0; c < n; ++c) primitive(r, c) = v[c];
  }
  const IntegerMatrix saturated = w.dim() == 0 ? IntegerMatrix(0, n) : saturate(primitive);
  const IntegerMatrix g = complete_to_unimodular(saturated);
  // g^T e_i is row i of g, so (g^T)^{-1} sends the saturated basis to e_1..e_m.
  return to_integer(invert(to_rational(g.transpose())), ErrorCode::NotSaturated);
}

}  // namespace dtori
