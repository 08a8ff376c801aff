#include <doctest.h>

#include <algorithm>
#include <set>

#include "kneserlab/errors.hpp"
#include "kneserlab/shadow.hpp"
#include "oracles.hpp"

using namespace kneserlab;

namespace {

Family sets(int n, int r, std::initializer_list<std::initializer_list<int>> list) {
  std::vector<RSet> out;
  for (auto s : list) out.push_back(RSet::of(s));
  return Family::from_sets(n, r, out);
}

Family random_family(int n, int r, std::size_t size, std::uint64_t seed) {
  rng::CounterEngine eng(seed, rng::Stream::kFamily);
  std::set<std::uint64_t> ranks;
  size = std::min<std::size_t>(size, small_binom(n, r));
  while (ranks.size() < size) ranks.insert(eng.below(small_binom(n, r)));
  std::vector<std::uint64_t> v(ranks.begin(), ranks.end());
  return Family::from_ranks(n, r, v);
}

Family traced_example() {
  return Family::star(7, 3, 1).minus(sets(7, 3, {{1, 2, 3}})).unite(sets(7, 3, {{4, 5, 6}}));
}

}  // namespace

TEST_CASE("exact shadows") {
  CHECK(shadow_exact(sets(5, 3, {{1, 2, 3}}), 2) == sets(5, 2, {{1, 2}, {1, 3}, {2, 3}}));
  CHECK(shadow_exact(Family::full(5, 3), 2) == Family::full(5, 2));
  CHECK(shadow_exact(sets(5, 3, {{1, 2, 3}, {1, 2, 4}}), 2).size() == 5);
  CHECK(shadow_exact(sets(5, 3, {{1, 2, 3}}), 3) == sets(5, 3, {{1, 2, 3}}));
  CHECK(shadow_exact(sets(5, 3, {{1, 2, 3}}), 0).size() == 1);
  CHECK_THROWS_AS(shadow_exact(Family::full(5, 2), 3), DomainError);
  CHECK(shadow_size(Family::full(9, 4), 2) == 36u);
  CHECK_FALSE(shadow_size(Family::full(9, 4), 2, 100).has_value());
}

TEST_CASE("exact shadows agree with the set-based oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 6 + static_cast<int>(seed % 5);
    const int r = 2 + static_cast<int>(seed % 3);
    const Family f = random_family(n, r, 1 + seed % 25, seed);
    for (int k = 0; k <= r; ++k) {
      const auto expected = oracle::shadow(oracle::to_vectors(f), k);
      const Family got = shadow_exact(f, k);
      REQUIRE(got.size() == expected.size());
      for (RSet s : got.members()) CHECK(expected.count(s.elements()));
    }
  }
}

TEST_CASE("Lovasz bound values") {
  const auto ten = lovasz_shadow_bound(10, 3, 2);
  CHECK(ten.lovasz_x == doctest::Approx(5.0));
  CHECK(ten.lovasz_bound == doctest::Approx(10.0));
  const auto one = lovasz_shadow_bound(1, 3, 2);
  CHECK(one.lovasz_x == doctest::Approx(3.0));
  CHECK(one.lovasz_bound == doctest::Approx(3.0));
  // C(4,3) = 4, so x is exactly 4 and [4]^(3) attains the bound.
  const auto four = lovasz_shadow_bound(4, 3, 2);
  CHECK(four.lovasz_x == doctest::Approx(4.0));
  CHECK(four.lovasz_bound == doctest::Approx(6.0));
  CHECK(shadow_exact(Family::full(4, 3), 2).size() == 6);
  const auto five = lovasz_shadow_bound(5, 3, 2);
  CHECK(five.lovasz_x > 4.0);
  CHECK(five.lovasz_bound > 6.0);
  CHECK_THROWS_AS(lovasz_shadow_bound(0, 3, 2), DomainError);
  CHECK_THROWS_AS(lovasz_shadow_bound(4, 3, 4), DomainError);
}

TEST_CASE("shadow sizes respect the Lovasz bound") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 6 + static_cast<int>(seed % 4);
    const int r = 2 + static_cast<int>(seed % 3);
    const Family f = random_family(n, r, 1 + seed % 40, seed + 77);
    for (int k = 1; k < r; ++k) {
      const auto b = lovasz_shadow_bound(static_cast<double>(f.size()), r, k);
      CHECK(static_cast<double>(shadow_exact(f, k).size()) >= b.lovasz_bound - 1e-6);
    }
  }
}

TEST_CASE("initial segments attain the Lovasz bound") {
  for (int r = 2; r <= 5; ++r) {
    for (int x = r; x <= 10; ++x) {
      const Family segment = Family::full(x, r);
      const Family embedded = Family::from_ranks(12, r, segment.ranks());
      for (int k = 1; k < r; ++k) {
        const auto b = lovasz_shadow_bound(static_cast<double>(embedded.size()), r, k);
        CHECK(static_cast<double>(shadow_exact(embedded, k).size()) ==
              doctest::Approx(b.lovasz_bound).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("shadow is monotone") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Family g = random_family(8, 4, 30, seed);
    std::vector<RSet> half;
    for (std::size_t i = 0; i < g.size(); i += 2) half.push_back(g[i]);
    const Family f = Family::from_sets(8, 4, half);
    const Family sf = shadow_exact(f, 2);
    const Family sg = shadow_exact(g, 2);
    for (RSet s : sf.members()) CHECK(sg.contains(s));
  }
}

TEST_CASE("edge-count pipeline on the traced example") {
  const auto result = kk_edge_lower_bound(traced_example());
  const KkTrace& t = result.trace;
  CHECK(t.ell == 1);
  CHECK(t.center == 1);
  CHECK(t.relabel_from == 1);
  CHECK(t.relabel_to == 7);
  CHECK(t.star_size == 14);
  CHECK(t.deficiency == 1);
  REQUIRE(t.outside_ranks.size() == 1);
  CHECK(unrank(t.outside_ranks[0], 7, 3) == RSet::of({4, 5, 6}));
  CHECK(t.complement_size == 3);
  CHECK(t.shadow_size == 3);
  CHECK_FALSE(t.used_lovasz_fallback);
  CHECK(result.bound == 2);
  CHECK(disjoint_pairs(traced_example()) == 2);

  const nlohmann::json j = t;
  CHECK(j["shadow_size"] == 3);
  CHECK(j["relabel"]["to"] == 7);
}

TEST_CASE("edge-count pipeline edge cases") {
  CHECK(kk_edge_lower_bound(Family::star(7, 3, 4)).bound == 0);
  CHECK(kk_edge_lower_bound(Family::star(7, 3, 4)).trace.outside_ranks.empty());
  CHECK_THROWS_AS(kk_edge_lower_bound(Family::full(7, 3)), DomainError);
  // A zero budget forces the Lovasz fallback, which is never larger than the exact size.
  const auto fallback = kk_edge_lower_bound(traced_example(), {}, 0);
  CHECK(fallback.trace.used_lovasz_fallback);
  CHECK(fallback.bound <= 2);
}

TEST_CASE("edge-count pipeline never exceeds the exact edge count") {
  const Family full = Family::full(7, 3);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Family f;
    if (seed % 2 == 0) {
      f = random_family(7, 3, 15, seed);
    } else {
      // Mostly a star: swap a few members out.
      rng::CounterEngine eng(seed, rng::Stream::kFamily);
      const int center = 1 + static_cast<int>(eng.below(7));
      const Family star = Family::star(7, 3, center);
      const Family outside = star.complement_in_universe();
      const std::size_t swaps = 1 + eng.below(4);
      std::set<std::size_t> drop;
      std::set<std::size_t> add;
      while (drop.size() < swaps) drop.insert(eng.below(star.size()));
      while (add.size() < swaps) add.insert(eng.below(outside.size()));
      std::vector<RSet> out;
      for (std::size_t i = 0; i < star.size(); ++i) {
        if (!drop.count(i)) out.push_back(star[i]);
      }
      for (auto i : add) out.push_back(outside[i]);
      f = Family::from_sets(7, 3, out);
    }
    const auto result = kk_edge_lower_bound(f);
    CHECK(result.bound <= oracle::disjoint_pairs(oracle::to_vectors(f)));
  }
}
