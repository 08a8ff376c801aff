#pragma once

// Kneser-graph semantics on families: adjacency is disjointness.

#include <cstdint>

#include "kneserlab/combinat.hpp"
#include "kneserlab/graph.hpp"
#include "kneserlab/parallel.hpp"
#include "kneserlab/setfam.hpp"

namespace kneserlab {

/// (n, r) with V = C(n,r), N = C(n-1,r-1), M = C(n-r-1,r-1), R = C(2r,r).
struct KneserParams {
  int n = 0;
  int r = 0;
  BigCount V;
  BigCount N;
  BigCount M;
  BigCount R;

  static KneserParams make(int n, int r);

  /// Throws DomainError unless n > 2r.
  void require_above_half() const;
};

struct SolverConfig {
  std::size_t cap = kDefaultSolverCap;
};

inline bool adjacent(RSet a, RSet b) noexcept { return (a.mask & b.mask) == 0; }

/// e(f): unordered disjoint pairs. OpenMP kernel over rows.
std::uint64_t disjoint_pairs(const Family& f, Threads threads = {});

namespace serial {
std::uint64_t disjoint_pairs(const Family& f);
}  // namespace serial

/// G_f: the Kneser graph restricted to f; vertex i is f[i].
struct InducedGraph {
  Family family;
  Graph graph;

  static InducedGraph of(const Family& f);
};

inline InducedGraph kneser_graph(int n, int r) { return InducedGraph::of(Family::full(n, r)); }

struct AlphaResult {
  std::size_t alpha = 0;
  /// Lexicographically least maximum independent set by member rank.
  Family witness;
};

AlphaResult alpha_exact(const InducedGraph& g, SolverConfig config = {});

/// f* and |f*|: the largest intersecting subfamily (lexicographically least).
AlphaResult max_intersecting(const Family& f, SolverConfig config = {});

bool is_intersecting(const Family& f) noexcept;

/// Whether every member contains one common element.
bool is_trivial(const Family& f) noexcept;

}  // namespace kneserlab
