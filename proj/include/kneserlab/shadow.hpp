#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "kneserlab/extremal.hpp"

namespace kneserlab {

/// All k-sets contained in some member of f, as a family in [n]^(k).
Family shadow_exact(const Family& f, int k);

/// Shadow size only; avoids materialising the family. Returns nullopt when
/// the number of generated subsets would exceed `budget`.
std::optional<std::uint64_t> shadow_size(const Family& f, int k,
                                         std::uint64_t budget = std::uint64_t{1} << 26);

struct ShadowBound {
  std::optional<std::uint64_t> exact_size;
  /// x with C(x, r) = size.
  double lovasz_x = 0;
  /// C(x, k).
  double lovasz_bound = 0;
};

ShadowBound lovasz_shadow_bound(double size, int r, int k);

/// Every intermediate quantity of the edge-count pipeline.
struct KkTrace {
  std::size_t ell = 0;
  int center = 0;
  /// The best centre is swapped with n so that it plays the role of n.
  int relabel_from = 0;
  int relabel_to = 0;
  std::uint64_t star_size = 0;
  BigCount deficiency;
  /// Colex ranks (original labels) of the ell members taken outside the star.
  std::vector<std::uint64_t> outside_ranks;
  /// Size of each complement within the n-1 remaining points: n - r - 1.
  int complement_size = 0;
  std::uint64_t shadow_size = 0;
  bool used_lovasz_fallback = false;
  double lovasz_bound = 0;
};

struct KkEdgeBound {
  BigCount bound;
  KkTrace trace;
};

/// Lower bound on e(f) for |f| = N: |shadow^(r-1) of the complements of ell
/// sets outside the best star| minus the star's deficiency, floored at zero.
KkEdgeBound kk_edge_lower_bound(const Family& f, SolverConfig config = {},
                                std::uint64_t shadow_budget = std::uint64_t{1} << 26);

void to_json(nlohmann::json& j, const KkTrace& trace);

}  // namespace kneserlab
