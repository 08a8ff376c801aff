#include <doctest.h>

#include <cmath>
#include <set>

#include "kneserlab/container.hpp"
#include "kneserlab/errors.hpp"
#include "oracles.hpp"

using namespace kneserlab;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  rng::CounterEngine eng(seed, rng::Stream::kGraph);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (eng.unit() < p) g.add_edge(u, v);
    }
  }
  return g;
}

Bitset from_mask(std::size_t n, std::uint64_t mask) {
  Bitset b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1) b.set(i);
  }
  return b;
}

Bitset from_vector(std::size_t n, const std::vector<std::size_t>& v) {
  Bitset b(n);
  for (auto x : v) b.set(x);
  return b;
}

// Independent re-derivation of the rule-1 accounting: at each insertion, count
// backward neighbours already in T from scratch.
void check_insertions(const GraphOracle& oracle, const ContainerRun& run) {
  std::set<std::size_t> t;
  for (const auto& rec : run.insertions) {
    std::size_t backward = 0;
    for (auto w : t) {
      if (oracle.graph().adjacent(w, rec.vertex) && oracle.position(w) < oracle.position(rec.vertex)) {
        ++backward;
      }
    }
    CHECK(backward == rec.backward_in_t);
    if (rec.rule == 1) CHECK(backward >= run.k);
    t.insert(rec.vertex);
  }
  CHECK(std::vector<std::size_t>(t.begin(), t.end()) == run.fingerprint);
}

void check_run(const GraphOracle& oracle, const Bitset& u, const Rational& a, const Rational& b) {
  const ContainerRun run = build_container(oracle, u, a, b);
  const Bitset t = from_vector(oracle.num_vertices(), run.fingerprint);
  const Bitset c = from_vector(oracle.num_vertices(), run.container);
  CHECK(t.is_subset_of(u));
  CHECK(u.is_subset_of(c));
  CHECK(run.t1_size + run.t2_size == run.fingerprint.size());
  // k is the least integer with k^2 > abd.
  const Rational abd = a * b * oracle.average_degree();
  CHECK(Rational(run.k * run.k) > abd);
  CHECK(Rational((run.k - 1) * (run.k - 1)) <= abd);
  const CertifiedBounds again = certify(oracle, u, t, c, a, b);
  CHECK(again.all_ok());
  if (again.fingerprint_bound) {
    CHECK(static_cast<double>(run.fingerprint.size()) <= *again.fingerprint_bound + 1e-9);
    CHECK(again.mu_c.convert_to<double>() <= *again.density_bound + 1e-9);
  }
  CHECK(reconstruct_container(oracle, run.fingerprint, a, b) == run.container);
  check_insertions(oracle, run);
}

Graph petersen() {
  const auto k = kneser_graph(5, 2);
  return k.graph;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("least integer strictly above a square root") {
  CHECK(least_integer_above_sqrt(Rational(0)) == 1);
  CHECK(least_integer_above_sqrt(Rational(1)) == 2);
  CHECK(least_integer_above_sqrt(Rational(4)) == 3);
  CHECK(least_integer_above_sqrt(Rational(399, 100)) == 2);
  CHECK(least_integer_above_sqrt(Rational(401, 100)) == 3);
  for (int num = 0; num < 400; ++num) {
    const Rational q(num, 7);
    const std::size_t k = least_integer_above_sqrt(q);
    CHECK(Rational(k * k) > q);
    CHECK(Rational((k - 1) * (k - 1)) <= q);
  }
}

TEST_CASE("oracle ordering") {
  const Graph g = petersen();
  const GraphOracle natural = GraphOracle::natural(g);
  CHECK(natural.average_degree() == 3);
  CHECK(natural.max_degree() == 3);
  for (std::size_t v = 0; v < 10; ++v) {
    for (auto w : natural.forward_neighbors(v)) {
      CHECK(w > v);
      CHECK(g.adjacent(v, w));
    }
  }
  const GraphOracle shuffled = GraphOracle::shuffled(g, 42);
  std::vector<std::size_t> sorted(shuffled.order().begin(), shuffled.order().end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(sorted[i] == i);
  const GraphOracle again = GraphOracle::shuffled(g, 42);
  CHECK(std::equal(shuffled.order().begin(), shuffled.order().end(), again.order().begin()));
  CHECK_THROWS_AS(GraphOracle(g, {0, 1, 2}), DomainError);
  CHECK_THROWS_AS(GraphOracle(g, {0, 0, 1, 2, 3, 4, 5, 6, 7, 8}), DomainError);
}

TEST_CASE("Petersen with a = 0 and b = 1") {
  const Graph g = petersen();
  const GraphOracle oracle = GraphOracle::natural(g);
  const Bitset star = from_vector(10, {0, 1, 3, 6});  // the star at 1 in colex order
  REQUIRE(g.is_independent(star));
  const ContainerRun run = build_container(oracle, star, 0, 1);
  CHECK(run.k == 1);
  REQUIRE(run.bounds.fingerprint_bound.has_value());
  CHECK(*run.bounds.fingerprint_bound == doctest::Approx(10.0 / 3.0));
  CHECK(*run.bounds.density_bound == doctest::Approx(4.0));
  CHECK(reconstruct_container(oracle, run.fingerprint, 0, 1) == run.container);
  CHECK_THROWS_AS(build_container(oracle, g.all_vertices(), 0, 1), PreconditionError);
  CHECK_THROWS_AS(build_container(oracle, star, 0, 0), DomainError);
}

TEST_CASE("empty fingerprint replays the bare pass") {
  const Graph g = petersen();
  const GraphOracle oracle = GraphOracle::natural(g);
  const ContainerRun run = build_container(oracle, Bitset(10), 0, 1);
  CHECK(run.fingerprint.empty());
  CHECK(reconstruct_container(oracle, {}, 0, 1) == run.container);
}

TEST_CASE("exhaustive sparse sets of the Petersen graph") {
  const Graph g = petersen();
  const GraphOracle natural = GraphOracle::natural(g);
  const GraphOracle shuffled = GraphOracle::shuffled(g, 9);
  for (std::uint64_t mask = 0; mask < 1024; ++mask) {
    const Bitset u = from_mask(10, mask);
    const std::size_t e = g.induced_edges(u);
    if (e > 5) continue;
    const Rational a(static_cast<long long>(e), 10);
    for (const Rational& b : {Rational(1, 3), Rational(1), Rational(3)}) {
      check_run(natural, u, a, b);
      check_run(shuffled, u, a, b);
    }
  }
}

TEST_CASE("random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(40, 0.2, seed);
    const GraphOracle oracle = GraphOracle::shuffled(g, seed);
    rng::CounterEngine eng(seed, rng::Stream::kFamily);
    Bitset u(40);
    for (std::size_t v = 0; v < 40; ++v) {
      if (eng.unit() < 0.3) u.set(v);
    }
    const Rational a = edge_density(g, u);
    check_run(oracle, u, a, Rational(1, 2));
    check_run(oracle, u, a + Rational(1, 4), Rational(2));
  }
}

TEST_CASE("edgeless graph leaves the bounds open") {
  const Graph g(6);
  const GraphOracle oracle = GraphOracle::natural(g);
  const ContainerRun run = build_container(oracle, from_vector(6, {1, 4}), 0, 1);
  CHECK_FALSE(run.bounds.fingerprint_bound.has_value());
  CHECK(run.bounds.all_ok());
}

TEST_CASE("Kneser containers and the supersaturation inversion") {
  const auto k = kneser_graph(7, 3);
  const GraphOracle oracle = GraphOracle::natural(k.graph);
  const auto params = KneserParams::make(7, 3);
  const double n_big = to_double(params.N);
  const double m_big = to_double(params.M);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    rng::CounterEngine eng(seed, rng::Stream::kFamily);
    std::set<std::uint64_t> ranks;
    const std::size_t size = 10 + eng.below(12);
    while (ranks.size() < size) ranks.insert(eng.below(35));
    const Family f = Family::from_ranks(7, 3, std::vector<std::uint64_t>(ranks.begin(), ranks.end()));
    const std::uint64_t m = disjoint_pairs(f) + eng.below(3);
    const ContainerRun run = kneser_container(oracle, f, m, Rational(1, 2));
    CHECK(run.bounds.all_ok());
    const double mu_c = run.bounds.mu_c.convert_to<double>();
    CHECK(static_cast<double>(run.container.size()) <= n_big + 2 * mu_c * 35 / m_big + 1e-9);
  }
  CHECK_THROWS_AS(kneser_container(oracle, Family::full(6, 3), 0, 1), DomainError);
}

TEST_CASE("container JSON") {
  const Graph g = petersen();
  const GraphOracle oracle = GraphOracle::natural(g);
  const nlohmann::json j = build_container(oracle, from_vector(10, {0, 1, 3, 6}), 0, 1);
  CHECK(j["k"] == 1);
  CHECK(j["a"] == "0");
  CHECK(j["bounds"]["containment_ok"] == true);
}

TEST_CASE("container-count parameters") {
  const auto p = KneserParams::make(20, 8);
  const auto bp = babycont_params(p, 0.1, 0.01, 1000);
  CHECK(bp.c_hat == doctest::Approx(2000));
  const double expected_k1 = 2000 * (50388 / 3.3 + std::sqrt(1000 * 50388 / 3.3));
  CHECK(bp.k1 == doctest::Approx(expected_k1).epsilon(1e-12));
  CHECK(bp.k1 == doctest::Approx(3.84e7).epsilon(0.01));
  CHECK(bp.vacuous);
  CHECK(bp.log_container_count == doctest::Approx(125970 * std::log(2.0)));

  const auto zero = babycont_params(p, 0.1, 0.01, 0);
  CHECK(zero.k1 == doctest::Approx(2000 * 50388 / 3.3).epsilon(1e-12));

  for (double beta : {0.001, 0.01, 0.3, 2.0}) {
    for (double m : {0.0, 10.0, 1e6}) {
      const auto q = babycont_params(p, 0.1, beta, m);
      CHECK(q.k2 - q.k1 == doctest::Approx(q.c_hat * beta * 50388).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(babycont_params(KneserParams::make(20, 9), 0.1, 0.01, 10), DomainError);
  CHECK_THROWS_AS(babycont_params(KneserParams::make(20, 1), 0.1, 0.01, 10), DomainError);
  CHECK_THROWS_AS(babycont_params(p, 0.1, 0, 10), DomainError);
}

TEST_CASE("container count is an exact log-sum when small") {
  const auto p = KneserParams::make(40, 4);
  const auto bp = babycont_params(p, 0.1, 50.0, 0);
  REQUIRE(bp.k1 < 2e6);
  REQUIRE_FALSE(bp.count_is_estimate);
  LogReal sum;
  const double v = to_double(p.V);
  for (double j = 0; j <= std::floor(bp.k1); j += 1) sum = sum + LogReal::from_log(log_binom(v, j));
  CHECK(bp.log_container_count == doctest::Approx(sum.log()).epsilon(1e-12));
  CHECK(bp.log_container_count <= v * entropy(std::floor(bp.k1) / v) + 1e-9);
}

TEST_CASE("Y_m bounds") {
  const auto p = KneserParams::make(20, 8);
  const auto big = ym_log_bound(p, 0.1, 1e6);
  CHECK(big.specialized);
  CHECK(std::isfinite(big.log_value));
  CHECK(big.log_value > 0);
  // Closed form: 10 C n (m N^2 / M)^(1/3).
  CHECK(big.log_value ==
        doctest::Approx(10 * 2000 * 20 * std::cbrt(1e6 * 50388.0 * 50388.0 / 330)).epsilon(1e-12));

  double prev = 0;
  for (double m = 3000; m < 1e9; m *= 1.7) {
    const auto b = ym_log_bound(p, 0.1, m);
    REQUIRE(b.specialized);
    CHECK(b.log_value >= prev);
    prev = b.log_value;
    CHECK(b.log_value >= ym_log_bound_general(p, 0.1, m, b.beta) - std::log(2.0) - 1e-9);
  }

  CHECK_THROWS_AS(ym_log_bound(p, 0.1, 10), PreconditionError);
  const auto small = ym_log_bound(p, 0.1, 10, 0.05);
  CHECK_FALSE(small.specialized);
  CHECK(small.log_value == doctest::Approx(ym_log_bound_general(p, 0.1, 10, 0.05)));
  double prev_general = 0;
  for (double m = 0; m < 1e5; m += 997) {
    const double v = ym_log_bound_general(p, 0.1, m, 0.05);
    CHECK(v >= prev_general);
    prev_general = v;
  }
}

TEST_CASE("supersaturation bound") {
  CHECK(supersat_lb(KneserParams::make(5, 2), 6) == doctest::Approx(6.0));
  CHECK(supersat_lb(KneserParams::make(5, 2), 6) <= static_cast<double>(disjoint_pairs(Family::full(5, 2))));
  CHECK(supersat_lb(KneserParams::make(7, 3), 0) == 0.0);
  CHECK_THROWS_AS(supersat_lb(KneserParams::make(5, 2), 7), DomainError);
  CHECK_THROWS_AS(supersat_lb(KneserParams::make(6, 3), 1), DomainError);
}
