#include "kneserlab/kneser.hpp"

#include <string>

#include "kneserlab/errors.hpp"

namespace kneserlab {

KneserParams KneserParams::make(int n, int r) {
  if (r < 1 || n < r || n > kMaxBinomN) {
    throw DomainError("Kneser parameters require 1 <= r <= n <= 256, got n=" + std::to_string(n) +
                      " r=" + std::to_string(r));
  }
  KneserParams p;
  p.n = n;
  p.r = r;
  p.V = binom_exact(n, r);
  p.N = binom_exact(n - 1, r - 1);
  p.M = n - r - 1 >= 0 ? binom_exact(n - r - 1, r - 1) : BigCount(0);
  p.R = binom_exact(2 * r, r);
  return p;
}

void KneserParams::require_above_half() const {
  if (n <= 2 * r) {
    throw DomainError("requires n > 2r, got n=" + std::to_string(n) + " r=" + std::to_string(r));
  }
}

namespace serial {

std::uint64_t disjoint_pairs(const Family& f) {
  const auto members = f.members();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      count += adjacent(members[i], members[j]);
    }
  }
  return count;
}

}  // namespace serial

std::uint64_t disjoint_pairs(const Family& f, Threads threads) {
  const auto members = f.members();
  const auto size = static_cast<std::int64_t>(members.size());
  std::uint64_t count = 0;
  // Row i costs size-i-1 checks; dynamic scheduling evens out the triangle.
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count) num_threads(resolve_threads(threads)) \
    if (size > 512)
  for (std::int64_t i = 0; i < size; ++i) {
    const RSet a = members[static_cast<std::size_t>(i)];
    std::uint64_t row = 0;
    for (std::int64_t j = i + 1; j < size; ++j) row += adjacent(a, members[static_cast<std::size_t>(j)]);
    count += row;
  }
  return count;
}

InducedGraph InducedGraph::of(const Family& f) {
  InducedGraph out{f, Graph(f.size())};
  const auto members = f.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (adjacent(members[i], members[j])) out.graph.add_edge(i, j);
    }
  }
  return out;
}

AlphaResult alpha_exact(const InducedGraph& g, SolverConfig config) {
  const MisResult mis = maximum_independent_set(g.graph, config.cap);
  std::vector<RSet> sets;
  sets.reserve(mis.witness.size());
  for (std::size_t v : mis.witness) sets.push_back(g.family[v]);
  return AlphaResult{mis.size, Family::from_sets(g.family.n(), g.family.r(), std::move(sets))};
}

AlphaResult max_intersecting(const Family& f, SolverConfig config) {
  if (f.size() > config.cap) {
    throw ResourceError("max_intersecting: family of " + std::to_string(f.size()) +
                        " sets exceeds the exact-solver cap of " + std::to_string(config.cap) +
                        "; use the analytic bounds instead");
  }
  if (is_intersecting(f)) return AlphaResult{f.size(), f};
  return alpha_exact(InducedGraph::of(f), config);
}

bool is_intersecting(const Family& f) noexcept { return f.empty() || serial::disjoint_pairs(f) == 0; }

bool is_trivial(const Family& f) noexcept {
  std::uint64_t common = ground_mask(f.n());
  for (RSet s : f.members()) common &= s.mask;
  return f.empty() || common != 0;
}

}  // namespace kneserlab
