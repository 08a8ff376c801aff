#pragma once

// Deterministic extremal bounds: Hilton-Milner threshold, proximity to the
// best star, induced matchings, and lower bounds on disjoint pairs.

#include <cstdint>
#include <optional>

#include "kneserlab/kneser.hpp"

namespace kneserlab {

/// ell(f) = |f| - |f*|.
std::size_t ell(const Family& f, SolverConfig config = {});

/// N - M + 2: intersecting families at least this large are stars (n > 2r).
BigCount hm_threshold(const KneserParams& p);

/// Exhaustive check that every intersecting family in [n]^(r) of size >=
/// hm_threshold is trivial. Returns the first counterexample if any.
/// Enumerates independent sets of K(n,r); only feasible for small V.
struct HiltonMilnerCheck {
  std::uint64_t families_checked = 0;
  std::optional<Family> counterexample;
};
HiltonMilnerCheck check_hilton_milner(const KneserParams& p, std::size_t max_vertices = 64);

struct StarProximity {
  int center = 0;
  std::uint64_t star_size = 0;
  /// N - star_size.
  BigCount deficiency;
  /// Filled when |f| is within the solver cap.
  std::optional<std::size_t> ell;
};

/// Centre x maximising |f_x|, smallest x on ties.
StarProximity best_star_center(const Family& f, SolverConfig config = {});

std::size_t induced_matching_number(const InducedGraph& g, std::size_t cap = kDefaultMatchingCap);

/// k^2 / (4m) with k = num_vertices - alpha.
double edge_lb_induced_matching(std::size_t num_vertices, std::size_t alpha, std::size_t m);

/// ell(f)^2 / (2R).
double edge_lb_setpairs(const Family& f, SolverConfig config = {});

/// ell(M - ell) for a size-N family whose largest intersecting subfamily is
/// verified to sit inside a star; nullopt when that regime does not apply.
struct Case1Bound {
  std::size_t ell = 0;
  int center = 0;
  BigCount bound;
};
std::optional<Case1Bound> case1_edge_lb(const Family& f, SolverConfig config = {});

}  // namespace kneserlab
