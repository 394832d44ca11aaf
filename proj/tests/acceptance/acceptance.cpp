// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "dtori/dtori.hpp"
#include "support/random_structures.hpp"

using namespace dtori;
using namespace dtori::testing;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

bool fails_validation(const RationalMatrix& basis) {
  try {
    DiracStructure::from_basis(basis);
  } catch (const Error& e) {
    return e.code() == ErrorCode::NotIsotropic || e.code() == ErrorCode::NotMaximal;
  }
  return false;
}

Result criterion_1() {
  Result r;
  Rng rng(1001);
  std::vector<DiracStructure> samples;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const DiracStructure g = random_structure(rng, n);
    const RationalMatrix a = g.x_block(), b = g.xi_block();
    r.check(rank(g.basis()) == n, "rank below n");
    r.check((naive_product(a, b.transpose()) + naive_product(b, a.transpose())).is_zero(),
            "A B^T + B A^T != 0");
    r.check(rows_pairwise_isotropic(g.basis()), "pairing nonzero on basis rows");
    samples.push_back(g);
  }
  int rejected = 0;
  for (int t = 0; t < 50; ++t) {
    // Perturb an entry whose partner in the other block is nonzero; the
    // diagonal of A B^T + B A^T then moves by 2 * partner.
    const DiracStructure& g = samples[t];
    const std::size_t n = g.n();
    RationalMatrix m = g.basis();
    const std::size_t row = t % n;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (m(row, j) == 0) continue;
      const std::size_t partner = j < n ? j + n : j - n;
      m(row, partner) += 1;
      break;
    }
    if (fails_validation(m)) ++rejected;
  }
  for (int t = 0; t < 50; ++t) {
    const DiracStructure& g = samples[50 + t];
    const std::size_t n = g.n();
    RationalMatrix m = g.basis();
    for (std::size_t j = 0; j < 2 * n; ++j) m(n - 1, j) = n >= 2 ? 2 * m(0, j) : Rational(0);
    if (fails_validation(m)) ++rejected;
  }
  r.check(rejected == 100, std::to_string(rejected) + "/100 perturbed bases rejected");
  if (r.pass) r.detail = "500 valid, 100/100 perturbed bases rejected";
  return r;
}

Result criterion_2() {
  Result r;
  Rng rng(1002);
  int defined = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = uniform(rng, 1, 4);
    const GroupElement g = eval_word(random_word(rng, n, 4), n);
    const RationalMatrix pi = random_skew(rng, n);
    RationalMatrix image;
    try {
      image = frac_linear(g, pi);
    } catch (const Error& e) {
      r.check(e.code() == ErrorCode::SingularDenominator, "unexpected error");
      continue;
    }
    ++defined;
    r.check(graph_poisson(image) == act(g, graph_poisson(pi)), "equivariance broken");
  }
  r.check(defined > 0, "no defined cases");
  if (r.pass) r.detail = std::to_string(defined) + "/200 defined cases agree";
  return r;
}

Result criterion_3() {
  Result r;
  Rng rng(1003);
  for (int t = 0; t < 200; ++t) {
    const DiracStructure g = random_structure(rng, uniform(rng, 1, 5));
    r.check(p_star(g) == characteristic(g).characteristic.annihilator(), "p_* != C°");
  }
  if (r.pass) r.detail = "200 structures";
  return r;
}

Result criterion_4() {
  Result r;
  Rng rng(1004);
  int poisson_pairs = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const DiracStructure gamma = random_structure(rng, n);
    const GroupElement g = eval_word(random_word(rng, n, 6), n);
    const DiracStructure moved = act(g, gamma);
    const bool preserved = characteristic(moved).parity == characteristic(gamma).parity;
    r.check(preserved == (g.determinant() == 1), "parity vs det mismatch");
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const DiracStructure gamma = graph_poisson(random_skew(rng, n));
    const GroupElement g = eval_word(random_word(rng, n, 6), n);
    if (!is_poisson(act(g, gamma))) continue;
    ++poisson_pairs;
    r.check(is_special(g), "nullity 0 -> 0 with det -1");
  }
  if (r.pass) r.detail = "200 cases; " + std::to_string(poisson_pairs) + " Poisson-to-Poisson pairs all det +1";
  return r;
}

Result criterion_5() {
  Result r;
  int count = 0;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        IntegerMatrix a = IntegerMatrix::identity(n);
        a(j - 1, i - 1) = 1;
        const RationalMatrix s = sigma({i}, n).matrix();
        const RationalMatrix lhs = naive_product(naive_product(s, rho(a).matrix()), s);
        r.check(lhs == nu_elementary(i, j, n).matrix(), "mismatch at i=" + std::to_string(i));
        ++count;
      }
  if (r.pass) r.detail = std::to_string(count) + " (i,j,n) triples";
  return r;
}

Result criterion_6() {
  Result r;
  Rng rng(1006);
  const std::size_t n = 4;
  for (int t = 0; t < 50; ++t) {
    const DiracStructure g = random_structure(rng, n);
    const auto cd = characteristic(g);
    for (const auto& s : all_subsets(n)) {
      const bool poisson = is_poisson(act(sigma(s, n), g));
      if (poisson) r.check(s.size() >= cd.nullity, "Poisson with |I| < N");
      if (s.size() == cd.nullity)
        r.check(poisson == is_complementary(cd.characteristic, make_transversal(s, n)),
                "Poisson iff complementary failed");
    }
  }
  if (r.pass) r.detail = "50 structures x 16 subsets";
  return r;
}

Result criterion_7() {
  Result r;
  Rng rng(1007);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = uniform(rng, 1, 5);
    const DiracStructure g = random_structure(rng, n);
    const long before = static_cast<long>(nullity(g));
    for (std::size_t i = 1; i <= n; ++i) {
      const long after = static_cast<long>(nullity(act(sigma({i}, n), g)));
      r.check(std::labs(after - before) == 1, "nullity step != 1");
    }
  }
  if (r.pass) r.detail = "200 structures, all i";
  return r;
}

Result criterion_8() {
  Result r;
  Rng rng(1008);
  for (Parity parity : {Parity::Even, Parity::Odd}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = uniform(rng, 1, 5);
      const DiracStructure g = random_structure_with_parity(rng, n, parity);
      const TransversalChoice tc = find_transversal(g);
      const PoissonMatrix c = commutation_matrix(g, tc.i_set);
      const SplitData s = split_blocks(g, tc.i_set);
      const auto ii = to_zero_based(tc.i_set), ip = to_zero_based(tc.i_prime);
      r.check(graph_poisson(c.entries()) == act(sigma(tc.i_set, n), g), "graph != sigma_I(Gamma)");
      r.check(c.entries().select(ii, ii).is_zero(), "I x I block nonzero");
      r.check(c.entries().select(ip, ii) == s.beta, "I' x I block != beta");
    }
  }
  if (r.pass) r.detail = "100 even + 100 odd structures";
  return r;
}

Result criterion_9() {
  Result r;
  int count = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& s : all_subsets(n)) {
      if (!s.empty() && s.front() == 1) continue;
      std::vector<std::size_t> with_one = s;
      with_one.insert(with_one.begin(), 1);
      const std::string lhs = "sigma{1};" + to_string(Term::make_sigma(with_one));
      const std::string rhs = to_string(Term::make_sigma(s));
      r.check(eval_word(lhs, n) == eval_word(rhs, n), lhs + " != " + rhs);
      ++count;
    }
  if (r.pass) r.detail = std::to_string(count) + " (n, I) pairs";
  return r;
}

Result criterion_10() {
  Result r;
  Rng rng(1010);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  auto polynomial = [&](std::size_t n) {
    FourierPolynomial f(n);
    const long count = uniform(rng, 1, 8);
    for (long k = 0; k < count; ++k) {
      MultiIndex m(n);
      for (auto& x : m) x = uniform(rng, -3, 3);
      f.add(m, {coeff(rng), coeff(rng)});
    }
    return f;
  };
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 1, 3);
    const PoissonMatrix pi(random_skew(rng, n, 12, 12));
    const auto f = polynomial(n), g = polynomial(n), h = polynomial(n);
    const auto lhs = star(star(f, g, pi), h, pi), rhs = star(f, star(g, h, pi), pi);
    for (const auto& [m, c] : lhs.terms()) worst = std::max(worst, std::abs(c - rhs.coefficient(m)));
    for (const auto& [m, c] : rhs.terms()) worst = std::max(worst, std::abs(c - lhs.coefficient(m)));

    const MultiIndex zero(n, 0);
    for (const auto& [m, c] : f.terms()) {
      r.check(star_phase(pi, zero, m).value() == 0 && star_phase(pi, m, zero).value() == 0,
              "e_0 phase nonzero");
    }
    const auto e0 = FourierPolynomial::monomial(zero);
    r.check(star(e0, f, pi).terms() == f.terms() && star(f, e0, pi).terms() == f.terms(),
            "e_0 not a unit");

    const PoissonMatrix integral(to_rational(random_integer_skew(rng, n, 5)));
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j)
        r.check(commutator_ratio(integral, i, j).value() == 0, "integer Pi commutator phase");
  }
  r.check(worst < 1e-12, "associativity residual " + std::to_string(worst));
  if (r.pass) {
    std::ostringstream s;
    s << "max associativity residual " << worst;
    r.detail = s.str();
  }
  return r;
}

Result criterion_11() {
  Result r;
  const GeneratorSet gens = default_generators(2);
  const DiracStructure half = graph_poisson(poisson_2x2(rat(1, 2)));
  const Word w1 = connect(half, graph_poisson(poisson_2x2(-2)), gens, 1, 10000);
  r.check(to_string(w1) == "sigma{1,2}", "theta=1/2 witness " + to_string(w1));

  const RationalMatrix n12 = nu_elementary(1, 2, 2).b();
  const Word w2 = connect(graph_poisson(RationalMatrix(2, 2)), graph_poisson(n12), gens, 3, 10000);
  r.check(to_string(w2) == "sigma{1};rho[[1,0],[1,1]];sigma{1}", "nu_12 witness " + to_string(w2));
  r.check(eval_word(w2, 2) == nu_elementary(1, 2, 2), "witness does not evaluate to nu_12");

  for (long k = -3; k <= 3; ++k)
    for (const Rational& theta : {rat(1, 2), rat(-7, 3), Rational(0), rat(5, 11)}) {
      const RationalMatrix pi = poisson_2x2(theta);
      for (const std::string word : {"rho[[1," + std::to_string(k) + "],[0,1]]",
                                     "rho[[1,0],[" + std::to_string(k) + ",1]]"})
        r.check(frac_linear(eval_word(word, 2), pi) == pi, word + " moves theta");
      r.check(frac_linear(eval_word("rho[[-1,0],[0,1]]", 2), pi) == -pi, "det -1 flip");
    }
  if (r.pass) r.detail = "witnesses sigma{1,2} and " + to_string(w2);
  return r;
}

Result criterion_12() {
  Result r;
  double rel = 0, uni = 0;
  int count = 0;
  for (long q = 1; q <= 12; ++q)
    for (long p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const ClockShiftRep rep = clock_shift(p, q);
      rel = std::max(rel, rep.relation_residual());
      uni = std::max(uni, rep.unitarity_residual());
      ++count;
    }
  r.check(rel < 1e-12 && uni < 1e-12, "residual too large");
  std::ostringstream s;
  s << count << " pairs, relation " << rel << ", unitarity " << uni;
  r.detail = r.pass ? s.str() : r.detail + " (" + s.str() + ")";
  return r;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + DTORI_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result criterion_13() {
  Result r;
  const std::string dir = std::string("\"") + DTORI_SAMPLES_DIR + "/";
  auto s = [&](const char* name) { return dir + name + "\""; };
  struct Case {
    std::string args;
    int expected;
  };
  const std::vector<Case> cases{
      {"inspect " + s("theta_half.json"), 0},
      {"act --word 'sigma{1,2}' " + s("theta_half.json"), 0},
      {"orbit " + s("theta_half.json") + " --target " + s("theta_minus_two.json") + " --depth 1", 0},
      {"rep --theta 1/3", 0},
      {"verify " + s("kronecker_b3.json"), 0},
      {"star " + s("poly_e10.json") + " " + s("poly_e01.json") + " --pi " + s("pi_half.json"), 0},
      {"inspect '{not json'", 1},
      {"act --word 'sigma{9}' " + s("theta_half.json"), 1},
      {"frobnicate", 1},
      {"fraclin --word 'sigma{1,2}' --pi " + s("pi_zero.json"), 2},
      {"inspect " + s("not_isotropic.json"), 3},
      {"act --word 'rho[[1]]' " + s("theta_half.json"), 4},
      {"poissonize --I '{}' " + s("kronecker_b3.json"), 5},
      {"orbit " + s("zero_poisson.json") + " --target " + s("shifted_poisson.json") + " --depth 2", 6},
  };
  for (const auto& c : cases) {
    const int got = run_cli(c.args);
    r.check(got == c.expected,
            "dtori " + c.args + " exited " + std::to_string(got) + ", expected " + std::to_string(c.expected));
  }
  if (r.pass) r.detail = std::to_string(cases.size()) + " invocations, exit codes 0-6";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"1 maximal isotropy of generated structures", criterion_1},
      {"2 fractional-linear equivariance", criterion_2},
      {"3 annihilator identity", criterion_3},
      {"4 parity and determinant", criterion_4},
      {"5 conjugated transvection is nu_ij", criterion_5},
      {"6 Poissonization iff complementary", criterion_6},
      {"7 nullity step", criterion_7},
      {"8 crossed-product commutation data", criterion_8},
      {"9 sigma diagram", criterion_9},
      {"10 star product", criterion_10},
      {"11 rotation-algebra desk check", criterion_11},
      {"12 clock and shift", criterion_12},
      {"13 CLI exit codes", criterion_13},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << r.detail << '\n';
    if (!r.pass) ++failures;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << " in " << secs << " s\n";
  return failures == 0 ? 0 : 1;
}
