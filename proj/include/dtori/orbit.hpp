#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "dtori/dirac.hpp"
#include "dtori/error.hpp"
#include "dtori/onn.hpp"
#include "dtori/word.hpp"

namespace dtori {

struct Generator {
  std::string label;  // word text of `term`
  Term term;
  GroupElement element;
};

/// Named integral generators, closed under inverses.
class GeneratorSet {
 public:
  GeneratorSet(std::size_t n, std::vector<Term> terms) : n_(n) {
    for (auto& t : terms) {
      GroupElement g = eval_term(t, n);
      if (!g.integral()) fail(ErrorCode::InvalidArgument, "generator " + to_string(t) + " is not integral");
      gens_.push_back({to_string(t), std::move(t), std::move(g)});
    }
    for (const auto& g : gens_) {
      const GroupElement inv = g.element.inverse();
      const bool closed = std::any_of(gens_.begin(), gens_.end(),
                                      [&](const Generator& h) { return h.element == inv; });
      if (!closed)
        fail(ErrorCode::InvalidArgument, "generator set lacks the inverse of " + g.label);
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

 private:
  std::size_t n_;
  std::vector<Generator> gens_;
};

/// sigma_I for every nonempty I (by size, then lexicographic), then rho of:
/// each transvection e_i ↦ e_i + e_j followed by its inverse (pairs (i,j) in
/// lexicographic order), the adjacent swaps (i, i+1), and diag(-1, 1, ..., 1).
inline GeneratorSet default_generators(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "default generators need n >= 1");
  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i + 1);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Term> terms;
  for (auto& s : subsets) terms.push_back(Term::make_sigma(std::move(s)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      RationalMatrix t = RationalMatrix::identity(n);
      t(j, i) = 1;
      terms.push_back(Term::make_matrix(Term::Kind::Rho, t));
      t(j, i) = -1;
      terms.push_back(Term::make_matrix(Term::Kind::Rho, t));
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    RationalMatrix s = RationalMatrix::identity(n);
    s(i, i) = 0;
    s(i + 1, i + 1) = 0;
    s(i, i + 1) = 1;
    s(i + 1, i) = 1;
    terms.push_back(Term::make_matrix(Term::Kind::Rho, s));
  }
  RationalMatrix flip = RationalMatrix::identity(n);
  flip(0, 0) = -1;
  terms.push_back(Term::make_matrix(Term::Kind::Rho, flip));
  return GeneratorSet(n, std::move(terms));
}

struct OrbitNode {
  DiracStructure structure;
  Word witness;  // eval_word(witness) maps the seed to `structure`
  std::size_t depth = 0;
};

enum class Bound { Depth, Nodes };

inline const char* to_string(Bound b) { return b == Bound::Depth ? "depth" : "nodes"; }

struct OrbitResult {
  DiracStructure seed;
  Bound bound = Bound::Depth;
  std::vector<OrbitNode> nodes;  // BFS order
};

struct ExploreOptions {
  std::size_t threads = 0;  // 0: hardware concurrency
  const DiracStructure* stop_at = nullptr;
};

namespace detail {

struct BfsEntry {
  DiracStructure structure;
  std::size_t parent;     // index into entries; self for the seed
  std::size_t generator;  // index into the generator set
  std::size_t depth;
};

// Children of frontier[begin, end) in (parent, generator) order. Expansion
// may run on several threads; the merge is sequential, so the result does
// not depend on the thread count.
inline std::vector<DiracStructure> expand(const std::vector<BfsEntry>& entries, std::size_t begin,
                                          std::size_t end, const GeneratorSet& gens,
                                          std::size_t threads) {
  const std::size_t count = (end - begin) * gens.size();
  std::vector<DiracStructure> children;
  children.reserve(count);
  auto job = [&](std::size_t k) {
    return act(gens[k % gens.size()].element, entries[begin + k / gens.size()].structure);
  };
  if (threads <= 1 || count < 64) {
    for (std::size_t k = 0; k < count; ++k) children.push_back(job(k));
    return children;
  }
  std::vector<std::vector<DiracStructure>> parts(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = t * count / threads; k < (t + 1) * count / threads; ++k)
          parts[t].push_back(job(k));
      });
  }
  for (auto& part : parts)
    for (auto& c : part) children.push_back(std::move(c));
  return children;
}

inline Word witness_of(const std::vector<BfsEntry>& entries, std::size_t idx,
                       const GeneratorSet& gens) {
  std::vector<std::size_t> path;
  while (entries[idx].parent != idx) {
    path.push_back(entries[idx].generator);
    idx = entries[idx].parent;
  }
  Word w;
  for (auto it = path.rbegin(); it != path.rend(); ++it) w.terms.push_back(gens[*it].term);
  return w;
}

}  // namespace detail

/// Breadth-first exploration of the orbit of `seed` under `gens`, bounded by
/// `depth` and by `max_nodes` emitted structures. Each structure appears
/// once, with the first shortest witness in generator order.
inline OrbitResult explore(const DiracStructure& seed, const GeneratorSet& gens, std::size_t depth,
                           std::size_t max_nodes, const ExploreOptions& options = {}) {
  require_dims(seed.n() == gens.n(), "seed and generators differ in n");
  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<detail::BfsEntry> entries;
  std::unordered_map<std::string, std::size_t> seen;
  OrbitResult result{seed, Bound::Depth, {}};
  if (max_nodes == 0) {
    result.bound = Bound::Nodes;
    return result;
  }
  entries.push_back({seed, 0, 0, 0});
  seen.emplace(seed.key(), 0);
  bool stopped = options.stop_at && *options.stop_at == seed;

  std::size_t level_begin = 0;
  for (std::size_t d = 1; d <= depth && !stopped; ++d) {
    const std::size_t level_end = entries.size();
    if (level_begin == level_end) break;
    const auto children = detail::expand(entries, level_begin, level_end, gens, threads);
    for (std::size_t k = 0; k < children.size() && !stopped; ++k) {
      auto [it, fresh] = seen.try_emplace(children[k].key(), entries.size());
      if (!fresh) continue;
      if (entries.size() >= max_nodes) {
        seen.erase(it);
        result.bound = Bound::Nodes;
        stopped = true;
        break;
      }
      entries.push_back({children[k], level_begin + k / gens.size(), k % gens.size(), d});
      if (options.stop_at && *options.stop_at == children[k]) stopped = true;
    }
    level_begin = level_end;
  }

  result.nodes.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    result.nodes.push_back({entries[i].structure, detail::witness_of(entries, i, gens),
                            entries[i].depth});
  return result;
}

/// A witness word taking `from` to `to`, searched within the bounds.
/// NotFoundWithinBounds says nothing about whether one exists.
inline Word connect(const DiracStructure& from, const DiracStructure& to, const GeneratorSet& gens,
                    std::size_t depth, std::size_t max_nodes) {
  require_dims(from.n() == to.n(), "structures differ in n");
  ExploreOptions opts;
  opts.stop_at = &to;
  const OrbitResult r = explore(from, gens, depth, max_nodes, opts);
  for (const auto& node : r.nodes)
    if (node.structure == to) return node.witness;
  fail(ErrorCode::NotFoundWithinBounds,
       "no witness within depth " + std::to_string(depth) + " and " +
           std::to_string(max_nodes) + " nodes");
}

}  // namespace dtori
