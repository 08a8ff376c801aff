#include <doctest.h>

#include <cmath>

#include "kneserlab/combinat.hpp"
#include "kneserlab/errors.hpp"
#include "oracles.hpp"

using namespace kneserlab;

TEST_CASE("binom_exact small values") {
  CHECK(binom_exact(5, 2) == 10);
  CHECK(binom_exact(4, 2) == 6);  // R for r = 2
  CHECK(binom_exact(19, 7) == oracle::pascal(19)[19][7]);
  CHECK(binom_exact(19, 7) == 50388);
  CHECK(binom_exact(7, -1) == 0);
  CHECK(binom_exact(7, 8) == 0);
  CHECK(binom_exact(0, 0) == 1);
}

TEST_CASE("binom_exact agrees with Pascal's triangle up to n = 256") {
  const auto table = oracle::pascal(256);
  for (int n : {64, 100, 200, 256}) {
    for (int k = 0; k <= n; k += 7) CHECK(binom_exact(n, k) == table[n][k]);
  }
  for (int n = 1; n <= 64; ++n) {
    for (int k = 1; k <= n; ++k) {
      CHECK(binom_exact(n, k) == binom_exact(n - 1, k - 1) + binom_exact(n - 1, k));
    }
  }
}

TEST_CASE("binom_exact rejects unsupported n") {
  CHECK_THROWS_AS(binom_exact(257, 3), DomainError);
  CHECK_THROWS_AS(binom_exact(-1, 0), DomainError);
}

TEST_CASE("gen_binom") {
  CHECK(gen_binom(5.0, 2) == doctest::Approx(10.0));
  CHECK(gen_binom(3.0, 3) == doctest::Approx(1.0));
  CHECK(gen_binom(3.0, 0) == 1.0);
  // 3.3723 is the 4-digit root of C(x,2) = 4.
  CHECK(gen_binom(3.3723, 2) == doctest::Approx(4.0).epsilon(1e-4));
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double exact = to_double(binom_exact(n, k));
      CHECK(std::abs(gen_binom(n, k) - exact) <= 1e-12 * exact);
    }
  }
}

TEST_CASE("gen_binom is strictly increasing above r - 1") {
  for (int r = 1; r <= 8; ++r) {
    double prev = gen_binom(r - 1 + 1e-3, r);
    for (double x = r - 1 + 0.01; x < 4 * r; x += 0.01) {
      const double cur = gen_binom(x, r);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("solve_binom_x") {
  CHECK(std::abs(solve_binom_x(10, 2) - 5.0) < 1e-9);
  CHECK(std::abs(solve_binom_x(1, 3) - 3.0) < 1e-9);
  const double root = (1 + std::sqrt(33.0)) / 2;  // x^2 - x - 8 = 0
  CHECK(std::abs(solve_binom_x(4, 2) - root) < 1e-9);
  CHECK(std::abs(gen_binom(solve_binom_x(4, 2), 2) - 4) < 1e-9);
  CHECK(std::abs(gen_binom(3.37228, 2) - 4) < 1e-4);
  CHECK_THROWS_AS(solve_binom_x(0.5, 2), DomainError);
  CHECK_THROWS_AS(solve_binom_x(3, 0), DomainError);
}

TEST_CASE("solve_binom_x inverts gen_binom on [r, 3r]") {
  for (int r = 1; r <= 10; ++r) {
    for (double x = r; x <= 3 * r; x += 0.137) {
      CHECK(std::abs(solve_binom_x(gen_binom(x, r), r) - x) < 1e-8);
    }
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(entropy(0) == 0);
  CHECK(entropy(1) == 0);
  const double direct = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(entropy(0.25) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(entropy(0.25) == doctest::Approx(0.562335).epsilon(1e-6));
  CHECK(entropy(0.25) == doctest::Approx(entropy(0.75)).epsilon(1e-14));
  CHECK_THROWS_AS(entropy(-0.1), DomainError);
  CHECK_THROWS_AS(entropy(1.1), DomainError);
}

TEST_CASE("solve_theta") {
  CHECK(theta_residual(0.3) > 0);
  CHECK(theta_residual(0.4) < 0);
  const double theta = solve_theta();
  CHECK(theta >= 0.3615);
  CHECK(theta <= 0.3625);
  CHECK(std::abs(theta_residual(theta)) < 1e-8);
}

TEST_CASE("LogReal of exact binomials matches lgamma") {
  for (int n = 0; n <= 256; ++n) {
    for (int k = 0; k <= n; k += 3) {
      const double via_count = LogReal::from_count(binom_exact(n, k)).log();
      const double via_gamma = log_binom(n, k);
      CHECK(std::abs(via_count - via_gamma) <= 1e-10 * std::max(1.0, std::abs(via_gamma)));
    }
  }
  const BigCount big = binom_exact(256, 128);
  const double exact = to_double(big);
  CHECK(std::abs(LogReal::from_count(big).value() - exact) <= 1e-12 * exact * 64);
  const BigCount huge = BigCount(1) << 3000;
  CHECK(LogReal::from_count(huge).log() == doctest::Approx(3000 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("LogReal arithmetic") {
  const LogReal a = LogReal::from_double(3);
  const LogReal b = LogReal::from_double(4);
  CHECK((a * b).value() == doctest::Approx(12));
  CHECK((a + b).value() == doctest::Approx(7));
  CHECK((a + LogReal::zero()).value() == doctest::Approx(3));
  CHECK((a * LogReal::zero()).is_zero());
  CHECK(a.pow(2).value() == doctest::Approx(9));
  CHECK(std::isinf(LogReal::zero().log()));
}
