#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kneserlab/errors.hpp"
#include "kneserlab/randomsim.hpp"
#include "oracles.hpp"

using namespace kneserlab;

namespace {

// Direct count of (x, B) with x not in B and every Kneser edge between B and
// the star at x missing.
std::uint64_t y_count_direct(const SparseKneser& g) {
  const Family& v = g.base->vertices();
  std::uint64_t total = 0;
  for (int x = 1; x <= v.n(); ++x) {
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (v[b].contains(x)) continue;
      bool isolated = true;
      for (std::size_t a = 0; a < v.size() && isolated; ++a) {
        if (v[a].contains(x) && g.graph.adjacent(a, b)) isolated = false;
      }
      total += isolated;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("template edges and their canonical indices") {
  const KneserTemplate base(KneserParams::make(5, 2));
  CHECK(base.vertices().size() == 10);
  CHECK(base.edges().size() == 15);
  CHECK(base.star_size() == 4);
  for (const auto& e : base.edges()) {
    CHECK(e.u < e.v);
    CHECK(e.index == std::uint64_t{e.v} * (e.v - 1) / 2 + e.u);
  }
  CHECK_THROWS_AS(KneserTemplate(KneserParams::make(14, 7)), ResourceError);
}

TEST_CASE("sampling endpoints") {
  const KneserTemplate base(KneserParams::make(7, 3));
  const auto full = sample_kp(base, 1.0, 3);
  CHECK(full.retained_edges == base.edges().size());
  CHECK(alpha_kp(full) == 15);
  CHECK(y_count(full) == 0);
  const auto empty = sample_kp(base, 0.0, 3);
  CHECK(empty.retained_edges == 0);
  CHECK(alpha_kp(empty) == 35);
  CHECK(y_count(empty) == 7 * 20);
  CHECK_THROWS_AS(sample_kp(base, 1.5, 0), DomainError);
  CHECK_THROWS_AS(sample_kp(base, -0.1, 0), DomainError);
}

TEST_CASE("sampling is a pure function of the seed") {
  const KneserTemplate base(KneserParams::make(7, 3));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = sample_kp(base, 0.4, seed);
    const auto b = sample_kp(base, 0.4, seed);
    CHECK(a.retained_edges == b.retained_edges);
    for (std::size_t v = 0; v < 35; ++v) CHECK(a.graph.neighbors(v) == b.graph.neighbors(v));
    // Coupling: the edge set grows with p for a fixed seed.
    const auto c = sample_kp(base, 0.6, seed);
    for (std::size_t v = 0; v < 35; ++v) CHECK(a.graph.neighbors(v).is_subset_of(c.graph.neighbors(v)));
  }
}

TEST_CASE("mean retained edges at (5,2), p = 1/2") {
  const KneserTemplate base(KneserParams::make(5, 2));
  const int trials = 10000;
  double sum = 0;
  for (int t = 0; t < trials; ++t) sum += static_cast<double>(sample_kp(base, 0.5, trial_seed(1, t)).retained_edges);
  const double mean = sum / trials;
  const double sigma = std::sqrt(15 * 0.25 / trials);  // Binomial(15, 1/2)
  CHECK(std::abs(mean - 7.5) <= 3 * sigma);
}

TEST_CASE("alpha agrees with exhaustive search on sampled graphs") {
  const KneserTemplate base(KneserParams::make(5, 2));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = sample_kp(base, 0.3 + 0.015 * static_cast<double>(seed), seed);
    const auto alpha = alpha_kp(g);
    CHECK(alpha == oracle::alpha_brute(g.graph));
    CHECK(alpha >= 4);
  }
  const KneserTemplate big(KneserParams::make(7, 3));
  const auto g = sample_kp(big, 0.9, 17);
  CHECK(alpha_kp(g) == alpha_kp(sample_kp(big, 0.9, 17)));
  CHECK(alpha_kp(g) >= 15);
}

TEST_CASE("y_count matches the direct count") {
  for (auto [n, r] : {std::pair{5, 2}, {7, 3}, {7, 2}}) {
    const KneserTemplate base(KneserParams::make(n, r));
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const auto g = sample_kp(base, 0.2 + 0.05 * static_cast<double>(seed), seed);
      CHECK(y_count(g) == y_count_direct(g));
    }
  }
}

TEST_CASE("expected Y") {
  CHECK(expected_y(KneserParams::make(5, 2), 0.5).value() == doctest::Approx(7.5));
  CHECK(expected_y(KneserParams::make(7, 3), 0.5).value() == doctest::Approx(17.5));
  CHECK(expected_y(KneserParams::make(7, 3), 0.0).value() == doctest::Approx(140));
  CHECK(expected_y(KneserParams::make(7, 3), 1.0).is_zero());
  CHECK(expected_y(KneserParams::make(6, 3), 0.5).value() == doctest::Approx(30));
  CHECK(expected_y(KneserParams::make(5, 3), 0.5).value() == doctest::Approx(20));  // M = 0
  CHECK(expected_y(KneserParams::make(4, 4), 0.5).is_zero());  // V = N
  const double big = expected_y(KneserParams::make(200, 50), 0.5).log();
  CHECK(std::isfinite(big));
  CHECK(big < 0);
}

TEST_CASE("Wilson interval") {
  const Interval zero = wilson_interval(0, 100);
  CHECK(zero.lo == 0);
  CHECK(zero.hi > 0);
  const Interval all = wilson_interval(100, 100);
  CHECK(all.hi == 1);
  CHECK(all.lo < 1);
  // 50/100: centre 0.5, half-width z sqrt(0.25/100 + z^2/40000) / (1 + z^2/100).
  const double z = 1.959963984540054;
  const double half = z * std::sqrt(0.0025 + z * z / 40000) / (1 + z * z / 100);
  const Interval mid = wilson_interval(50, 100);
  CHECK(mid.lo == doctest::Approx(0.5 - half));
  CHECK(mid.hi == doctest::Approx(0.5 + half));
}

TEST_CASE("alpha = N probability at the endpoints") {
  const KneserTemplate base(KneserParams::make(7, 3));
  ScanConfig config;
  config.trials = 50;
  config.seed = 5;
  const auto at_zero = prob_alpha_equals_n(base, 0.0, config);
  CHECK(at_zero.successes == 0);
  CHECK(at_zero.phat == 0.0);
  const auto at_one = prob_alpha_equals_n(base, 1.0, config);
  CHECK(at_one.successes == 50);
  CHECK(at_one.phat == 1.0);
  config.trials = 0;
  CHECK_THROWS_AS(prob_alpha_equals_n(base, 0.5, config), DomainError);
  config.trials = 5;
  config.solver.cap = 10;
  CHECK_THROWS_AS(prob_alpha_equals_n(base, 0.5, config), ResourceError);
}

TEST_CASE("parallel kernels reproduce the serial reference") {
  const KneserTemplate base(KneserParams::make(7, 3));
  ScanConfig config;
  config.trials = 64;
  config.seed = 11;
  const auto reference = serial::prob_alpha_equals_n(base, 0.7, config);
  for (int threads : {1, 2, 3, 8}) {
    config.threads = Threads{threads};
    const auto parallel = prob_alpha_equals_n(base, 0.7, config);
    CHECK(parallel.successes == reference.successes);
    CHECK(parallel.wilson.lo == reference.wilson.lo);
    CHECK(parallel.expected_y_log == reference.expected_y_log);

    const auto y_ref = serial::simulate_y(base, 0.5, 200, 3);
    const auto y_par = simulate_y(base, 0.5, 200, 3, Threads{threads});
    CHECK(y_par.observed_mean == y_ref.observed_mean);
    CHECK(y_par.stderr_mean == y_ref.stderr_mean);
  }
}

TEST_CASE("threshold scan and output formats") {
  const KneserTemplate base(KneserParams::make(7, 3));
  ScanConfig config;
  config.trials = 30;
  config.seed = 7;
  const auto scan = threshold_scan(base, {0.0, 1.0}, config);
  REQUIRE(scan.points.size() == 2);
  CHECK(scan.points[0].phat == 0.0);
  CHECK(scan.points[1].phat == 1.0);
  CHECK(scan.inversions.empty());

  std::ostringstream csv;
  write_scan_csv(csv, scan);
  const std::string text = csv.str();
  CHECK(text.rfind("p,trials,successes,phat,wilson_lo,wilson_hi,expected_y_log\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("\n1,30,30,1,") != std::string::npos);
  CHECK(text.find("-inf") != std::string::npos);  // E[Y] = 0 at p = 1

  const auto j = scan_to_json(scan, "test");
  CHECK(j["version"] == "test");
  CHECK(j["seed"] == 7);
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][1]["successes"] == 30);
}

TEST_CASE("p-grid parsing") {
  const auto grid = parse_p_grid("0:1:0.05");
  REQUIRE(grid.size() == 21);
  CHECK(grid.front() == 0.0);
  CHECK(grid[3] == 0.15);
  CHECK(grid.back() == 1.0);
  CHECK(parse_p_grid("0.1,0.5,0.9") == std::vector<double>{0.1, 0.5, 0.9});
  CHECK_THROWS_AS(parse_p_grid(""), DomainError);
  CHECK_THROWS_AS(parse_p_grid("0:1:0"), DomainError);
  CHECK_THROWS_AS(parse_p_grid("0.5,x"), DomainError);
  CHECK_THROWS_AS(parse_p_grid("0,1.5"), DomainError);
}
