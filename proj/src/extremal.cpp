#include "kneserlab/extremal.hpp"

#include <string>

#include "kneserlab/errors.hpp"

namespace kneserlab {

std::size_t ell(const Family& f, SolverConfig config) {
  return f.size() - max_intersecting(f, config).alpha;
}

BigCount hm_threshold(const KneserParams& p) {
  p.require_above_half();
  return p.N - p.M + 2;
}

HiltonMilnerCheck check_hilton_milner(const KneserParams& p, std::size_t max_vertices) {
  const BigCount threshold = hm_threshold(p);
  const Family universe = Family::full(p.n, p.r);
  if (universe.size() > max_vertices) {
    throw ResourceError("Hilton-Milner enumeration over " + std::to_string(universe.size()) +
                        " sets exceeds the cap of " + std::to_string(max_vertices));
  }
  const InducedGraph g = InducedGraph::of(universe);
  HiltonMilnerCheck result;
  const auto min_size = static_cast<std::size_t>(to_u64(threshold));
  for_each_independent_set(g.graph, min_size, [&](std::span<const std::size_t> vertices) {
    ++result.families_checked;
    std::uint64_t common = ground_mask(p.n);
    for (auto v : vertices) common &= universe[v].mask;
    if (common == 0) {
      std::vector<RSet> sets;
      for (auto v : vertices) sets.push_back(universe[v]);
      result.counterexample = Family::from_sets(p.n, p.r, std::move(sets));
      return false;
    }
    return true;
  });
  return result;
}

StarProximity best_star_center(const Family& f, SolverConfig config) {
  StarProximity out;
  out.center = 1;
  for (int x = 1; x <= f.n(); ++x) {
    std::uint64_t count = 0;
    for (RSet s : f.members()) count += s.contains(x);
    if (count > out.star_size) {
      out.star_size = count;
      out.center = x;
    }
  }
  out.deficiency = KneserParams::make(f.n(), f.r()).N - out.star_size;
  if (f.size() <= config.cap) out.ell = ell(f, config);
  return out;
}

std::size_t induced_matching_number(const InducedGraph& g, std::size_t cap) {
  return induced_matching_number(g.graph, cap);
}

double edge_lb_induced_matching(std::size_t num_vertices, std::size_t alpha, std::size_t m) {
  if (alpha > num_vertices) throw DomainError("alpha cannot exceed the number of vertices");
  const double k = static_cast<double>(num_vertices - alpha);
  if (m == 0) {
    if (k > 0) throw DomainError("m = 0 forces an edgeless graph, so alpha must equal |V|");
    return 0.0;
  }
  return k * k / (4.0 * static_cast<double>(m));
}

double edge_lb_setpairs(const Family& f, SolverConfig config) {
  const double l = static_cast<double>(ell(f, config));
  return l * l / (2.0 * to_double(binom_exact(2 * f.r(), f.r())));
}

std::optional<Case1Bound> case1_edge_lb(const Family& f, SolverConfig config) {
  const KneserParams p = KneserParams::make(f.n(), f.r());
  if (BigCount(f.size()) != p.N) {
    throw DomainError("case1_edge_lb requires |f| = N = " + p.N.str() + ", got " +
                      std::to_string(f.size()));
  }
  const AlphaResult star_part = max_intersecting(f, config);
  const std::size_t l = f.size() - star_part.alpha;
  if (BigCount(l) + 2 > p.M) return std::nullopt;

  // Check the Hilton-Milner conclusion on the witness instead of assuming it.
  const StarProximity prox = best_star_center(star_part.witness, SolverConfig{0});
  if (prox.star_size != star_part.witness.size()) return std::nullopt;

  return Case1Bound{l, prox.center, BigCount(l) * (p.M - l)};
}

}  // namespace kneserlab
