#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dtori/dtori.hpp"
#include "support/random_structures.hpp"

using namespace dtori;
using namespace dtori::testing;

namespace {

FourierPolynomial random_polynomial(Rng& rng, std::size_t n, std::size_t max_terms) {
  FourierPolynomial f(n);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const std::size_t count = uniform(rng, 1, static_cast<long>(max_terms));
  for (std::size_t k = 0; k < count; ++k) {
    MultiIndex r(n);
    for (auto& x : r) x = uniform(rng, -3, 3);
    f.add(r, {coeff(rng), coeff(rng)});
  }
  return f;
}

double max_difference(const FourierPolynomial& a, const FourierPolynomial& b) {
  double worst = 0;
  for (const auto& [r, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(r)));
  for (const auto& [r, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(r)));
  return worst;
}

MultiIndex unit(std::size_t n, std::size_t i) {
  MultiIndex e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

TEST(ExactPhase, ReducesModTwoAndHitsQuarterTurnsExactly) {
  EXPECT_EQ(ExactPhase(rat(5, 2)).value(), rat(1, 2));
  EXPECT_EQ(ExactPhase(rat(-1, 2)).value(), rat(3, 2));
  EXPECT_EQ(ExactPhase(4).value(), 0);
  EXPECT_EQ(ExactPhase(rat(1, 2)).to_complex(), Complex(0, 1));
  EXPECT_EQ(ExactPhase(1).to_complex(), Complex(-1, 0));
  EXPECT_EQ(ExactPhase(rat(3, 2)).to_complex(), Complex(0, -1));
  const Complex w = ExactPhase(rat(1, 3)).to_complex();
  EXPECT_NEAR(w.real(), 0.5, 1e-15);
  EXPECT_NEAR(w.imag(), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_EQ(ExactPhase(rat(3, 2)) + ExactPhase(rat(3, 4)), ExactPhase(rat(1, 4)));
}

TEST(PoissonMatrix, ValidatesSkewAndEvaluatesBilinearForm) {
  EXPECT_THROW(PoissonMatrix(rm({{0, 1}, {0, 0}})), Error);
  const PoissonMatrix p(rm({{0, rat(1, 2)}, {rat(-1, 2), 0}}));
  EXPECT_EQ(p.bilinear({1, 0}, {0, 1}), rat(1, 2));
  EXPECT_EQ(p.bilinear({0, 1}, {1, 0}), rat(-1, 2));
  EXPECT_EQ(p.bilinear({2, 3}, {2, 3}), 0);
}

TEST(Star, Examples) {
  Rng rng(81);
  const PoissonMatrix pi(random_skew(rng, 3));
  const FourierPolynomial er = FourierPolynomial::monomial({1, -2, 3}, {0.5, 0.25});
  const FourierPolynomial e0 = FourierPolynomial::monomial({0, 0, 0});
  EXPECT_EQ(star(er, e0, pi).terms(), er.terms());
  EXPECT_EQ(star(e0, er, pi).terms(), er.terms());

  const PoissonMatrix half(poisson_2x2(rat(1, 2)));
  const FourierPolynomial prod =
      star(FourierPolynomial::monomial({1, 0}), FourierPolynomial::monomial({0, 1}), half);
  EXPECT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.coefficient({1, 1}), Complex(0, -1));

  const PoissonMatrix integral(rm({{0, 3, -1}, {-3, 0, 2}, {1, -2, 0}}));
  for (int t = 0; t < 20; ++t) {
    MultiIndex r(3), s(3);
    for (auto& x : r) x = uniform(rng, -3, 3);
    for (auto& x : s) x = uniform(rng, -3, 3);
    const Rational rs = star_phase(integral, r, s).value();
    EXPECT_TRUE(rs == 0 || rs == 1);
    EXPECT_EQ(star_phase(integral, r, s), star_phase(integral, s, r));
  }
  EXPECT_THROW(star(er, FourierPolynomial::monomial({1, 0}), pi), Error);
}

TEST(Star, SingleTermPhaseOracle) {
  Rng rng(82);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const RationalMatrix m = random_skew(rng, n, 9, 12);
    const PoissonMatrix pi(m);
    MultiIndex r(n), s(n), sum(n);
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = uniform(rng, -3, 3);
      s[k] = uniform(rng, -3, 3);
      sum[k] = r[k] + s[k];
    }
    double quad = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) quad += m(j, k).get_d() * r[j] * s[k];
    const Complex expected = std::polar(1.0, -std::numbers::pi * quad);
    const FourierPolynomial p = star(FourierPolynomial::monomial(r), FourierPolynomial::monomial(s), pi);
    EXPECT_NEAR(std::abs(p.coefficient(sum) - expected), 0.0, 1e-12);
  }
}

TEST(Star, Associative) {
  Rng rng(83);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const PoissonMatrix pi(random_skew(rng, n, 12, 12));
    const Rational hbar = uniform(rng, 0, 1) ? Rational(1) : random_rational(rng);
    const auto f = random_polynomial(rng, n, 8), g = random_polynomial(rng, n, 8),
               h = random_polynomial(rng, n, 8);
    worst = std::max(worst, max_difference(star(star(f, g, pi, hbar), h, pi, hbar),
                                           star(f, star(g, h, pi, hbar), pi, hbar)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Star, PhasesAreAdditiveExactly) {
  Rng rng(84);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const PoissonMatrix pi(random_skew(rng, n, 9, 12));
    MultiIndex a(n), b(n), c(n), ab(n), bc(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = uniform(rng, -3, 3);
      b[k] = uniform(rng, -3, 3);
      c[k] = uniform(rng, -3, 3);
      ab[k] = a[k] + b[k];
      bc[k] = b[k] + c[k];
    }
    EXPECT_EQ(star_phase(pi, a, b) + star_phase(pi, ab, c), star_phase(pi, b, c) + star_phase(pi, a, bc));
  }
}

TEST(CommutatorRatio, Examples) {
  EXPECT_EQ(commutator_ratio(PoissonMatrix::zero(2), 1, 2).value(), 0);
  const ExactPhase half = commutator_ratio(PoissonMatrix(poisson_2x2(rat(1, 2))), 1, 2);
  EXPECT_EQ(half.to_complex(), Complex(-1, 0));
  const PoissonMatrix integral(rm({{0, 5}, {-5, 0}}));
  EXPECT_EQ(commutator_ratio(integral, 1, 2).value(), 0);
  EXPECT_THROW(commutator_ratio(integral, 0, 2), Error);
  EXPECT_THROW(commutator_ratio(integral, 1, 3), Error);
}

TEST(CommutatorRatio, MatchesStarProductsAndIsTwiceHbarPi) {
  Rng rng(85);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 2, 4);
    const RationalMatrix m = random_skew(rng, n, 9, 12);
    const PoissonMatrix pi(m);
    const Rational hbar = random_rational(rng);
    const std::size_t i = uniform(rng, 1, n), j = uniform(rng, 1, n);
    const ExactPhase ratio = commutator_ratio(pi, i, j, hbar);
    EXPECT_EQ(ratio, ExactPhase(2 * hbar * m(i - 1, j - 1)));
    EXPECT_EQ((ratio + commutator_ratio(pi, j, i, hbar)).value(), 0);

    const auto ei = FourierPolynomial::monomial(unit(n, i - 1));
    const auto ej = FourierPolynomial::monomial(unit(n, j - 1));
    MultiIndex sum = unit(n, i - 1);
    sum[j - 1] += 1;
    const Complex ji = star(ej, ei, pi, hbar).coefficient(sum);
    const Complex ij = star(ei, ej, pi, hbar).coefficient(sum);
    EXPECT_NEAR(std::abs(ji - ratio.to_complex() * ij), 0.0, 1e-12);

    const PoissonMatrix shifted(m + to_rational(random_integer_skew(rng, n, 4)));
    EXPECT_EQ(commutator_ratio(shifted, i, j), commutator_ratio(pi, i, j));
  }
}

TEST(CommutationMatrix, Examples) {
  const RationalMatrix pi = rm({{0, rat(3, 5)}, {rat(-3, 5), 0}});
  EXPECT_EQ(commutation_matrix(graph_poisson(pi), {}).entries(), pi);
  const DiracStructure k = DiracStructure::from_basis(rm({{3, 1, 0, 0}, {0, 0, 1, -3}}));
  EXPECT_EQ(commutation_matrix(k, {2}).entries(), poisson_2x2(3));
  EXPECT_TRUE(commutation_matrix(foliation(Subspace::coordinate(2, {0})), {1}).entries().is_zero());
  EXPECT_THROW(commutation_matrix(k, {}), Error);
}

TEST(CommutationMatrix, GraphIsSigmaImage) {
  Rng rng(86);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const DiracStructure g = random_structure(rng, n);
    const auto i = find_transversal(g).i_set;
    const PoissonMatrix c = commutation_matrix(g, i);
    EXPECT_EQ(c.entries(), to_poisson(g, i));
    EXPECT_EQ(graph_poisson(c.entries()), act(sigma(i, n), g));
  }
}

TEST(ClockShift, Examples) {
  const ClockShiftRep one = clock_shift(0, 1);
  EXPECT_EQ(one.u, ComplexMatrix::identity(1));
  EXPECT_EQ(one.v, ComplexMatrix::identity(1));

  const ClockShiftRep two = clock_shift(1, 2);
  EXPECT_EQ(two.u(1, 1), Complex(-1, 0));
  EXPECT_LT(two.relation_residual(), 1e-12);
  // Direct 2x2 multiplication: VU = -UV.
  EXPECT_LT(ClockShiftRep::max_abs(two.v * two.u + two.u * two.v), 1e-12);

  const ClockShiftRep three = clock_shift(1, 3);
  EXPECT_LT(three.relation_residual(), 1e-12);
  const ComplexMatrix u3 = three.u * three.u * three.u, v3 = three.v * three.v * three.v;
  EXPECT_LT(ClockShiftRep::max_abs(u3 - ComplexMatrix::identity(3)), 1e-12);
  EXPECT_LT(ClockShiftRep::max_abs(v3 - ComplexMatrix::identity(3)), 1e-12);

  EXPECT_THROW(clock_shift(2, 4), Error);
  EXPECT_THROW(clock_shift(1, 0), Error);
}

TEST(ClockShift, AllCoprimePairsUpToTwelve) {
  for (long q = 1; q <= 12; ++q)
    for (long p = -q; p <= 2 * q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const ClockShiftRep rep = clock_shift(p, q);
      EXPECT_LT(rep.relation_residual(), 1e-12) << p << "/" << q;
      EXPECT_LT(rep.unitarity_residual(), 1e-12) << p << "/" << q;
      // v e_k = e_{k+1}
      for (long k = 0; k < q; ++k) EXPECT_EQ(rep.v((k + 1) % q, k), Complex(1, 0));
    }
}

TEST(Descriptor, Examples) {
  const QuantizationDescriptor zero = descriptor(graph_poisson(RationalMatrix(2, 2)));
  EXPECT_EQ(zero.parity, Parity::Even);
  EXPECT_EQ(zero.nullity, 0u);
  EXPECT_TRUE(zero.theta_reduced.is_zero());

  const QuantizationDescriptor fol = descriptor(foliation(Subspace::coordinate(2, {0})));
  EXPECT_EQ(fol.parity, Parity::Odd);
  EXPECT_EQ(fol.nullity, 1u);
  EXPECT_TRUE(fol.theta_reduced.is_zero());

  const QuantizationDescriptor half = descriptor(graph_poisson(poisson_2x2(rat(1, 2))));
  EXPECT_EQ(half.theta_reduced, rm({{0, rat(1, 2)}, {rat(1, 2), 0}}));
}

TEST(Descriptor, DeterministicAndReduced) {
  Rng rng(87);
  for (int t = 0; t < 50; ++t) {
    const DiracStructure g = random_structure(rng, uniform(rng, 1, 4));
    const auto d1 = descriptor(g), d2 = descriptor(g);
    EXPECT_EQ(d1.theta_reduced, d2.theta_reduced);
    EXPECT_EQ(d1.transversal.i_set, d2.transversal.i_set);
    for (const auto& x : d1.theta_reduced.data()) {
      EXPECT_GE(x, 0);
      EXPECT_LT(x, 1);
    }
  }
}
