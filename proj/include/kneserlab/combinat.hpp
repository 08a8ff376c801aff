#pragma once

// Exact and log-scale binomial arithmetic, binary entropy, and the monotone
// root solvers used by the shadow and container bounds.

#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace kneserlab {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr int kMaxBinomN = 256;

/// Non-negative real stored as its natural logarithm, so that quantities
/// like (1-p)^M survive far below the double range.
class LogReal {
 public:
  LogReal() = default;

  static LogReal zero() { return LogReal{}; }
  static LogReal from_log(double log_value);
  static LogReal from_double(double value);
  static LogReal from_count(const BigCount& value);

  bool is_zero() const noexcept { return zero_; }
  /// -inf for zero.
  double log() const noexcept {
    return zero_ ? -std::numeric_limits<double>::infinity() : log_value_;
  }
  double value() const;

  LogReal operator*(const LogReal& other) const;
  LogReal operator+(const LogReal& other) const;
  LogReal pow(double exponent) const;

 private:
  double log_value_ = 0.0;
  bool zero_ = true;
};

/// Exact C(n, k) for 0 <= n <= 256; zero outside 0 <= k <= n.
BigCount binom_exact(int n, int k);

/// Natural log of C(n, k) through lgamma; works for real n well beyond 256.
double log_binom(double n, double k);

/// Generalised binomial x(x-1)...(x-r+1)/r!.
double gen_binom(double x, int r);

/// Unique x >= r-1 with gen_binom(x, r) == m (bisection, absolute error < 1e-9).
double solve_binom_x(double m, int r);

/// Binary entropy in nats, H(0) = H(1) = 0.
double entropy(double x);

/// Residual 3(1-t)H(t/(1-t)) - 2H(t); its root in (0, 1/2) is the
/// r/n ceiling below which the container count for Y_m suffices.
double theta_residual(double t);

double solve_theta();

/// Lossy conversion of a big count to double (inf when out of range).
double to_double(const BigCount& value);

/// Throws DomainError when value does not fit.
std::uint64_t to_u64(const BigCount& value);

}  // namespace kneserlab
