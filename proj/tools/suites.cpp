#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "kneserlab/container.hpp"
#include "kneserlab/errors.hpp"
#include "kneserlab/extremal.hpp"
#include "kneserlab/shadow.hpp"

namespace cli {

using namespace kneserlab;

namespace {

constexpr std::uint64_t kSamplingLimit = 5000;
constexpr std::uint64_t kWitnessLimit = 1000000;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

KneserParams params_of(const SuiteConfig& cfg) { return KneserParams::make(cfg.n, cfg.r); }

void require_sampling_size(const KneserParams& p) {
  if (p.V > kSamplingLimit) {
    throw ResourceError("[n]^(r) has " + p.V.str() + " sets; sampling suites support at most " +
                        std::to_string(kSamplingLimit));
  }
}

rng::CounterEngine trial_engine(const SuiteConfig& cfg, std::uint64_t t) {
  return rng::CounterEngine(rng::counter_hash(cfg.seed, rng::Stream::kTrial, t), rng::Stream::kFamily);
}

/// Uniform `size`-subfamily of [n]^(r) by partial Fisher-Yates over ranks.
Family random_family(int n, int r, std::size_t size, rng::CounterEngine& eng) {
  std::vector<std::uint64_t> ranks(small_binom(n, r));
  std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
  size = std::min(size, ranks.size());
  for (std::size_t i = 0; i < size; ++i) std::swap(ranks[i], ranks[i + eng.below(ranks.size() - i)]);
  ranks.resize(size);
  return Family::from_ranks(n, r, ranks);
}

/// Star at `center` with `swaps` members exchanged for sets avoiding it.
Family perturbed_star(int n, int r, int center, std::size_t swaps, rng::CounterEngine& eng) {
  const Family star = Family::star(n, r, center);
  const Family outside = star.complement_in_universe();
  swaps = std::min({swaps, star.size(), outside.size()});
  std::vector<std::size_t> drop(star.size());
  std::vector<std::size_t> add(outside.size());
  std::iota(drop.begin(), drop.end(), std::size_t{0});
  std::iota(add.begin(), add.end(), std::size_t{0});
  for (std::size_t i = 0; i < swaps; ++i) {
    std::swap(drop[i], drop[i + eng.below(drop.size() - i)]);
    std::swap(add[i], add[i + eng.below(add.size() - i)]);
  }
  std::vector<bool> dropped(star.size(), false);
  for (std::size_t i = 0; i < swaps; ++i) dropped[drop[i]] = true;
  std::vector<RSet> out;
  for (std::size_t i = 0; i < star.size(); ++i) {
    if (!dropped[i]) out.push_back(star[i]);
  }
  for (std::size_t i = 0; i < swaps; ++i) out.push_back(outside[add[i]]);
  return Family::from_sets(n, r, std::move(out));
}

Report suite_ekr(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  if (cfg.n < 2 * cfg.r) throw PreconditionError("verify ekr requires n >= 2r");
  const InducedGraph g = kneser_graph(cfg.n, cfg.r);
  const AlphaResult result = alpha_exact(g, SolverConfig{cfg.cap});
  Report report;
  const std::uint64_t big_n = to_u64(p.N);

  std::uint64_t witnesses = 0;
  std::uint64_t stars = 0;
  bool truncated = false;
  std::optional<Family> non_star;
  for_each_independent_set(g.graph, result.alpha, [&](std::span<const std::size_t> vertices) {
    if (vertices.size() != result.alpha) return true;
    ++witnesses;
    std::uint64_t common = ground_mask(cfg.n);
    for (auto v : vertices) common &= g.family[v].mask;
    if (common != 0) {
      ++stars;
    } else if (!non_star) {
      std::vector<RSet> sets;
      for (auto v : vertices) sets.push_back(g.family[v]);
      non_star = Family::from_sets(cfg.n, cfg.r, std::move(sets));
    }
    truncated = witnesses >= kWitnessLimit;
    return !truncated;
  });

  std::string line = "alpha=" + std::to_string(result.alpha);
  line += result.alpha == big_n ? "=N" : "!=N=" + std::to_string(big_n);
  line += "; " + std::to_string(witnesses) + (truncated ? "+" : "") + " maximum witnesses, ";
  line += stars == witnesses ? std::string("all stars") : std::to_string(stars) + " stars";
  if (result.alpha != big_n) {
    report.fail(line, serialize_family(result.witness));
  } else if (cfg.n > 2 * cfg.r && non_star) {
    report.fail(line, serialize_family(*non_star));
  } else {
    report.lines.push_back(line);
  }
  report.detail = {{"n", cfg.n},         {"r", cfg.r},     {"alpha", result.alpha},
                   {"N", big_n},         {"witnesses", witnesses}, {"stars", stars},
                   {"truncated", truncated}};
  return report;
}

Report suite_hilton_milner(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  const BigCount threshold = hm_threshold(p);
  const HiltonMilnerCheck check = check_hilton_milner(p, std::min<std::size_t>(cfg.cap, 64));
  Report report;
  const std::string line = "threshold N-M+2=" + threshold.str() + "; " +
                           std::to_string(check.families_checked) +
                           " intersecting families at or above it";
  if (check.counterexample) {
    report.fail(line + ", found a non-star", serialize_family(*check.counterexample));
  } else {
    report.lines.push_back(line + ", all stars");
  }
  report.detail = {{"n", cfg.n},
                   {"r", cfg.r},
                   {"threshold", threshold.str()},
                   {"families_checked", check.families_checked}};
  return report;
}

Report suite_matching(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  if (cfg.n < 2 * cfg.r) throw PreconditionError("verify matching requires n >= 2r");
  const InducedGraph g = kneser_graph(cfg.n, cfg.r);
  const std::size_t m = induced_matching_number(g);
  const std::uint64_t expected = to_u64(binom_exact(2 * cfg.r - 1, cfg.r - 1));
  Report report;
  const std::string label =
      "C(" + std::to_string(2 * cfg.r - 1) + "," + std::to_string(cfg.r - 1) + ")";
  const std::string line = "m=" + std::to_string(m) + (m == expected ? "=" : "!=") + label;
  if (m == expected) {
    report.lines.push_back(line);
  } else {
    report.fail(line);
  }
  const std::size_t alpha = alpha_exact(g, SolverConfig{cfg.cap}).alpha;
  const double bound = edge_lb_induced_matching(g.graph.num_vertices(), alpha, m);
  const std::string edge_line = "|E|=" + std::to_string(g.graph.num_edges()) + " >= (V-alpha)^2/(4m)=" + fmt(bound);
  if (static_cast<double>(g.graph.num_edges()) >= bound) {
    report.lines.push_back(edge_line);
  } else {
    report.fail(edge_line);
  }
  report.detail = {{"n", cfg.n}, {"r", cfg.r}, {"m", m}, {"expected", expected},
                   {"alpha", alpha}, {"edges", g.graph.num_edges()}, {"edge_bound", bound}};
  return report;
}

Report suite_setpairs(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  require_sampling_size(p);
  const double two_r = 2 * to_double(p.R);
  const std::size_t max_size = std::min<std::size_t>(to_u64(p.V), 40);
  Report report;
  std::uint64_t checked = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  auto check = [&](const Family& f) {
    ++checked;
    const double l = static_cast<double>(ell(f, SolverConfig{cfg.cap}));
    const double e = static_cast<double>(disjoint_pairs(f));
    min_margin = std::min(min_margin, e - l * l / two_r);
    if (e < l * l / two_r) {
      report.fail("e=" + fmt(e) + " < ell^2/(2R)=" + fmt(l * l / two_r), serialize_family(f));
    }
  };
  if (p.V <= 10) {
    const auto v = to_u64(p.V);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << v); ++mask) {
      std::vector<std::uint64_t> ranks;
      for (std::uint64_t i = 0; i < v; ++i) {
        if (mask >> i & 1) ranks.push_back(i);
      }
      check(Family::from_ranks(cfg.n, cfg.r, ranks));
    }
  }
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto eng = trial_engine(cfg, t);
    check(random_family(cfg.n, cfg.r, 1 + eng.below(max_size), eng));
  }
  report.lines.push_back(std::to_string(checked) + " families checked; min e - ell^2/(2R) = " + fmt(min_margin));
  report.detail = {{"n", cfg.n}, {"r", cfg.r}, {"families", checked}, {"min_margin", min_margin}};
  return report;
}

Report suite_supersat(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  p.require_above_half();
  require_sampling_size(p);
  const std::uint64_t big_n = to_u64(p.N);
  const std::uint64_t outside_count = to_u64(p.V - p.N);
  Report report;
  std::uint64_t checked = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  auto check = [&](std::uint64_t k, std::uint64_t e, const auto& family_text) {
    ++checked;
    const double bound = supersat_lb(p, BigCount(k));
    min_margin = std::min(min_margin, static_cast<double>(e) - bound);
    if (static_cast<double>(e) < bound) {
      report.fail("k=" + std::to_string(k) + ": e=" + std::to_string(e) + " < kM/2=" + fmt(bound),
                  family_text());
    }
  };

  // Greedy adversary: grow the star at 1 by the outside set creating the fewest
  // new disjoint pairs, checking every k along the way.
  const Family star = Family::star(cfg.n, cfg.r, 1);
  const Family outside = star.complement_in_universe();
  std::vector<std::uint64_t> cost(outside.size(), 0);
  std::vector<bool> used(outside.size(), false);
  std::vector<RSet> chosen(star.members().begin(), star.members().end());
  for (std::size_t i = 0; i < outside.size(); ++i) {
    for (RSet s : star.members()) cost[i] += adjacent(s, outside[i]);
  }
  std::uint64_t e = 0;
  for (std::uint64_t k = 1; k <= outside_count; ++k) {
    std::size_t best = outside.size();
    for (std::size_t i = 0; i < outside.size(); ++i) {
      if (!used[i] && (best == outside.size() || cost[i] < cost[best])) best = i;
    }
    used[best] = true;
    e += cost[best];
    chosen.push_back(outside[best]);
    for (std::size_t i = 0; i < outside.size(); ++i) cost[i] += adjacent(outside[i], outside[best]);
    check(k, e, [&] { return serialize_family(Family::from_sets(cfg.n, cfg.r, chosen)); });
  }

  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto eng = trial_engine(cfg, t);
    const std::uint64_t k = 1 + eng.below(outside_count);
    const Family f = random_family(cfg.n, cfg.r, big_n + k, eng);
    check(k, disjoint_pairs(f, cfg.threads), [&] { return serialize_family(f); });
  }
  report.lines.push_back(std::to_string(checked) + " families of size N+k checked (" +
                         std::to_string(outside_count) + " greedy, " + std::to_string(cfg.trials) +
                         " random); min e - kM/2 = " + fmt(min_margin));
  report.detail = {{"n", cfg.n}, {"r", cfg.r}, {"families", checked}, {"min_margin", min_margin}};
  return report;
}

Report suite_shadow(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  require_sampling_size(p);
  Report report;
  std::uint64_t shadow_checks = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  const std::size_t max_size = std::min<std::size_t>(to_u64(p.V), 200);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto eng = trial_engine(cfg, t);
    const Family f = random_family(cfg.n, cfg.r, 1 + eng.below(max_size), eng);
    for (int k = 1; k < cfg.r; ++k) {
      ++shadow_checks;
      const double bound = lovasz_shadow_bound(static_cast<double>(f.size()), cfg.r, k).lovasz_bound;
      const auto size = static_cast<double>(shadow_exact(f, k).size());
      min_margin = std::min(min_margin, size - bound);
      if (size < bound - 1e-6) {
        report.fail("k=" + std::to_string(k) + ": shadow " + fmt(size) + " < C(x,k)=" + fmt(bound),
                    serialize_family(f));
      }
    }
  }
  report.lines.push_back(std::to_string(shadow_checks) + " shadows checked; min |shadow| - C(x,k) = " +
                         fmt(min_margin));

  std::uint64_t pipeline_checks = 0;
  if (cfg.n > 2 * cfg.r && p.N <= cfg.cap) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      auto eng = trial_engine(cfg, t + cfg.trials);
      const int center = 1 + static_cast<int>(eng.below(static_cast<std::uint64_t>(cfg.n)));
      const Family f = perturbed_star(cfg.n, cfg.r, center, 1 + eng.below(4), eng);
      const KkEdgeBound kk = kk_edge_lower_bound(f, SolverConfig{cfg.cap});
      const std::uint64_t e = disjoint_pairs(f);
      ++pipeline_checks;
      if (kk.bound > e) {
        report.fail("edge pipeline bound " + kk.bound.str() + " > e=" + std::to_string(e), serialize_family(f));
      }
    }
    report.lines.push_back(std::to_string(pipeline_checks) + " size-N families: edge pipeline bound <= e");
  }
  report.detail = {{"n", cfg.n},
                   {"r", cfg.r},
                   {"shadow_checks", shadow_checks},
                   {"min_margin", min_margin},
                   {"pipeline_checks", pipeline_checks}};
  return report;
}

Report suite_container(const SuiteConfig& cfg) {
  const KneserParams p = params_of(cfg);
  require_sampling_size(p);
  const InducedGraph g = kneser_graph(cfg.n, cfg.r);
  const GraphOracle colex = GraphOracle::natural(g.graph);
  const GraphOracle shuffled = GraphOracle::shuffled(g.graph, cfg.seed);
  const std::vector<Rational> bs = {Rational(1, 3), Rational(1), Rational(3)};
  const std::size_t max_size = std::min<std::size_t>(to_u64(p.V), 2 * to_u64(p.N));
  Report report;
  std::uint64_t runs = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    auto eng = trial_engine(cfg, t);
    const Family u = t % 2 == 0 ? random_family(cfg.n, cfg.r, 1 + eng.below(max_size), eng)
                                : perturbed_star(cfg.n, cfg.r, 1 + static_cast<int>(eng.below(cfg.n)),
                                                 eng.below(4), eng);
    const std::uint64_t e = disjoint_pairs(u);
    for (const GraphOracle* oracle : {&colex, &shuffled}) {
      for (const Rational& b : bs) {
        ++runs;
        try {
          const ContainerRun run = kneser_container(*oracle, u, e, b);
          if (reconstruct_container(*oracle, run.fingerprint, run.a, run.b) != run.container) {
            report.fail("replay differs from the original container", serialize_family(u));
          }
        } catch (const InvariantError& err) {
          report.fail(err.what(), serialize_family(u));
        }
      }
    }
  }
  report.lines.push_back(std::to_string(runs) +
                         " container runs: T <= U <= C, size and density bounds, replay identical");
  report.detail = {{"n", cfg.n}, {"r", cfg.r}, {"runs", runs}};
  return report;
}

}  // namespace

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table = {
      {"ekr", suite_ekr},           {"hilton-milner", suite_hilton_milner},
      {"matching", suite_matching}, {"setpairs", suite_setpairs},
      {"supersat", suite_supersat}, {"shadow", suite_shadow},
      {"container", suite_container},
  };
  return table;
}

}  // namespace cli
