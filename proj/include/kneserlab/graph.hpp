#pragma once

// Simple undirected graphs on vertices 0..n-1 with bitset adjacency rows, and
// the exact exponential-time searches run on them: maximum independent set,
// independent-set enumeration, and the induced-matching number.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kneserlab/bitset.hpp"

namespace kneserlab {

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_vertices);

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  /// Ignores loops and repeated edges.
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const noexcept { return adj_[u].test(v); }
  const Bitset& neighbors(std::size_t v) const noexcept { return adj_[v]; }
  std::size_t degree(std::size_t v) const noexcept { return adj_[v].count(); }
  std::size_t max_degree() const noexcept;

  /// Number of edges with both ends in subset.
  std::size_t induced_edges(const Bitset& subset) const;
  /// Subgraph on the listed vertices, relabelled 0..k-1 in list order.
  Graph induced(std::span<const std::size_t> vertices) const;
  Bitset all_vertices() const { return Bitset(num_vertices(), true); }

  bool is_independent(const Bitset& subset) const;

 private:
  std::vector<Bitset> adj_;
  std::size_t num_edges_ = 0;
};

struct MisResult {
  std::size_t size = 0;
  /// Ascending vertex ids; the lexicographically least maximum independent set.
  std::vector<std::size_t> witness;
};

/// Default ceiling on vertex count for the exact solvers.
inline constexpr std::size_t kDefaultSolverCap = 600;
inline constexpr std::size_t kDefaultMatchingCap = 40;

/// Exact independence number by branch and bound on the complement-clique
/// formulation with greedy clique-cover (colouring) bounds.
std::size_t independence_number(const Graph& g, std::size_t cap = kDefaultSolverCap);

/// Whether g[candidates] has an independent set of size >= target.
bool has_independent_set(const Graph& g, const Bitset& candidates, std::size_t target);

MisResult maximum_independent_set(const Graph& g, std::size_t cap = kDefaultSolverCap);

/// Calls visit for every independent set of size >= min_size (sets given as
/// ascending vertex lists, each visited once). Stops early when visit returns false.
void for_each_independent_set(const Graph& g, std::size_t min_size,
                              const std::function<bool(std::span<const std::size_t>)>& visit);

/// Exact induced-matching number.
std::size_t induced_matching_number(const Graph& g, std::size_t cap = kDefaultMatchingCap);

}  // namespace kneserlab
