#pragma once

// Random sparse Kneser graphs K_p(n, r) and Monte Carlo estimates of the
// events P(alpha = N) and E[Y].
//
// Every random bit is a pure function of (seed, index): edge e of trial t is
// retained iff to_unit(counter_hash(trial_seed(seed, t), kEdge, e)) < p. Trial
// seeds do not depend on p, so scans over a p-grid reuse the same uniforms.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kneserlab/kneser.hpp"

namespace kneserlab {

inline constexpr std::size_t kSampleCap = 2000;

/// K(n, r) materialised once: vertices in colex order and its edges with
/// canonical indices j(j-1)/2 + i for i < j.
class KneserTemplate {
 public:
  struct Edge {
    std::uint32_t u;
    std::uint32_t v;
    std::uint64_t index;
  };

  explicit KneserTemplate(const KneserParams& params, std::size_t cap = kSampleCap);

  const KneserParams& params() const noexcept { return params_; }
  const Family& vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::uint64_t star_size() const noexcept { return star_size_; }

 private:
  KneserParams params_;
  Family vertices_;
  std::vector<Edge> edges_;
  std::uint64_t star_size_ = 0;
};

struct SparseKneser {
  const KneserTemplate* base = nullptr;
  double p = 0;
  std::uint64_t seed = 0;
  Graph graph;
  std::size_t retained_edges = 0;
};

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

SparseKneser sample_kp(const KneserTemplate& base, double p, std::uint64_t seed);

std::size_t alpha_kp(const SparseKneser& g, SolverConfig config = {});

/// n (V - N) (1 - p)^M.
LogReal expected_y(const KneserParams& params, double p);

/// Pairs (x, B), B not containing x, with no retained edge between B and the star at x.
std::uint64_t y_count(const SparseKneser& g);

struct Interval {
  double lo = 0;
  double hi = 1;
};

/// 95% Wilson score interval.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct ScanPoint {
  double p = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double phat = 0;
  Interval wilson;
  double mean_runtime_ms = 0;
  double expected_y_log = 0;
};

struct ScanConfig {
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  SolverConfig solver;
  Threads threads;
};

/// Fraction of trials with alpha(K_p(n, r)) == N. OpenMP over trials.
ScanPoint prob_alpha_equals_n(const KneserTemplate& base, double p, const ScanConfig& config);

struct ScanResult {
  KneserParams params;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<ScanPoint> points;
  /// Pairs (i, j), i < j, with p_i < p_j whose Wilson intervals put phat_j
  /// strictly below phat_i.
  std::vector<std::pair<std::size_t, std::size_t>> inversions;
};

ScanResult threshold_scan(const KneserTemplate& base, const std::vector<double>& p_grid,
                          const ScanConfig& config);

/// Parses "start:stop:step" or a comma-separated list.
std::vector<double> parse_p_grid(const std::string& spec);

void write_scan_csv(std::ostream& out, const ScanResult& scan);
nlohmann::json scan_to_json(const ScanResult& scan, const std::string& version);

struct YStat {
  LogReal expected;
  double observed_mean = 0;
  std::uint64_t trials = 0;
  double stderr_mean = 0;
};

/// Mean of y_count over independent trials, against expected_y.
YStat simulate_y(const KneserTemplate& base, double p, std::uint64_t trials, std::uint64_t seed,
                 Threads threads = {});

namespace serial {
ScanPoint prob_alpha_equals_n(const KneserTemplate& base, double p, const ScanConfig& config);
YStat simulate_y(const KneserTemplate& base, double p, std::uint64_t trials, std::uint64_t seed);
}  // namespace serial

}  // namespace kneserlab
