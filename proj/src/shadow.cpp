#include "kneserlab/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kneserlab/errors.hpp"

namespace kneserlab {

namespace {

void check_k(const Family& f, int k) {
  if (k < 0 || k > f.r()) {
    throw DomainError("shadow level k=" + std::to_string(k) + " must satisfy 0 <= k <= r=" +
                      std::to_string(f.r()));
  }
}

// Distinct k-subsets of the members, sorted by mask.
std::vector<RSet> shadow_sets(const Family& f, int k) {
  std::vector<RSet> out;
  const std::uint64_t universe = small_binom(f.n(), k);
  if (universe <= Family::kIndexLimit) {
    std::vector<bool> seen(universe, false);
    for (RSet s : f.members()) {
      for_each_subset_of_size(s.mask, k, [&](std::uint64_t m) {
        const std::uint64_t i = rank(RSet{m});
        if (!seen[i]) {
          seen[i] = true;
          out.push_back(RSet{m});
        }
      });
    }
    std::sort(out.begin(), out.end());
  } else {
    for (RSet s : f.members()) {
      for_each_subset_of_size(s.mask, k, [&](std::uint64_t m) { out.push_back(RSet{m}); });
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::uint64_t swap_elements(std::uint64_t mask, int a, int b) {
  const std::uint64_t ba = std::uint64_t{1} << (a - 1);
  const std::uint64_t bb = std::uint64_t{1} << (b - 1);
  const bool has_a = mask & ba;
  const bool has_b = mask & bb;
  mask &= ~(ba | bb);
  if (has_a) mask |= bb;
  if (has_b) mask |= ba;
  return mask;
}

}  // namespace

Family shadow_exact(const Family& f, int k) {
  check_k(f, k);
  return Family::from_sets(f.n(), k, shadow_sets(f, k));
}

std::optional<std::uint64_t> shadow_size(const Family& f, int k, std::uint64_t budget) {
  check_k(f, k);
  const double generated = static_cast<double>(f.size()) * static_cast<double>(small_binom(f.r(), k));
  if (generated > static_cast<double>(budget)) return std::nullopt;
  return shadow_sets(f, k).size();
}

ShadowBound lovasz_shadow_bound(double size, int r, int k) {
  if (k < 0 || k > r) throw DomainError("lovasz_shadow_bound requires 0 <= k <= r");
  if (!(size >= 1)) throw DomainError("lovasz_shadow_bound requires size >= 1");
  ShadowBound out;
  out.lovasz_x = solve_binom_x(size, r);
  out.lovasz_bound = gen_binom(out.lovasz_x, k);
  return out;
}

KkEdgeBound kk_edge_lower_bound(const Family& f, SolverConfig config, std::uint64_t shadow_budget) {
  const KneserParams p = KneserParams::make(f.n(), f.r());
  if (BigCount(f.size()) != p.N) {
    throw DomainError("kk_edge_lower_bound requires |f| = N = " + p.N.str() + ", got " +
                      std::to_string(f.size()));
  }
  KkEdgeBound out;
  out.bound = 0;
  KkTrace& trace = out.trace;
  trace.ell = ell(f, config);
  if (trace.ell == 0) return out;

  const StarProximity prox = best_star_center(f, SolverConfig{0});
  const int n = f.n();
  trace.center = prox.center;
  trace.relabel_from = prox.center;
  trace.relabel_to = n;
  trace.star_size = prox.star_size;
  trace.deficiency = prox.deficiency;

  // |f_x| <= |f*| = N - ell, so at least ell members avoid the centre.
  const Family outside = f.subfamily_avoiding(prox.center);
  if (outside.size() < trace.ell) {
    throw InvariantError("kk_edge_lower_bound: fewer than ell members outside the best star");
  }

  // After swapping centre and n, each chosen set B lies in [n-1]; B' is its
  // complement there, an (n-r-1)-set.
  const std::uint64_t rest = ground_mask(n - 1);
  std::vector<RSet> complements;
  for (std::size_t i = 0; i < trace.ell; ++i) {
    trace.outside_ranks.push_back(rank(outside[i]));
    const std::uint64_t relabelled = swap_elements(outside[i].mask, prox.center, n);
    complements.push_back(RSet{rest & ~relabelled});
  }
  trace.complement_size = n - f.r() - 1;
  const Family b_prime = Family::from_sets(n - 1, trace.complement_size, std::move(complements));

  trace.lovasz_bound =
      lovasz_shadow_bound(static_cast<double>(trace.ell), trace.complement_size, f.r() - 1).lovasz_bound;
  if (auto exact = shadow_size(b_prime, f.r() - 1, shadow_budget)) {
    trace.shadow_size = *exact;
  } else {
    trace.used_lovasz_fallback = true;
    trace.shadow_size = static_cast<std::uint64_t>(std::ceil(trace.lovasz_bound - 1e-9));
  }

  const BigCount raw = BigCount(trace.shadow_size) - trace.deficiency;
  out.bound = raw > 0 ? raw : BigCount(0);
  return out;
}

void to_json(nlohmann::json& j, const KkTrace& trace) {
  j = nlohmann::json{
      {"ell", trace.ell},
      {"center", trace.center},
      {"relabel", {{"from", trace.relabel_from}, {"to", trace.relabel_to}}},
      {"star_size", trace.star_size},
      {"deficiency", trace.deficiency.str()},
      {"outside_ranks", trace.outside_ranks},
      {"complement_size", trace.complement_size},
      {"shadow_size", trace.shadow_size},
      {"used_lovasz_fallback", trace.used_lovasz_fallback},
      {"lovasz_bound", trace.lovasz_bound},
  };
}

}  // namespace kneserlab
