#include "kneserlab/combinat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kneserlab/errors.hpp"

namespace kneserlab {

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr int kMaxBracketSteps = 4096;

}  // namespace

LogReal LogReal::from_log(double log_value) {
  LogReal out;
  if (std::isinf(log_value) && log_value < 0) return out;
  out.log_value_ = log_value;
  out.zero_ = false;
  return out;
}

LogReal LogReal::from_double(double value) {
  if (value < 0 || std::isnan(value)) {
    throw DomainError("LogReal requires a non-negative value");
  }
  if (value == 0) return zero();
  return from_log(std::log(value));
}

LogReal LogReal::from_count(const BigCount& value) {
  if (value < 0) throw DomainError("LogReal requires a non-negative count");
  if (value == 0) return zero();
  const auto bits = static_cast<long>(boost::multiprecision::msb(value));
  if (bits < 1000) return from_log(std::log(value.convert_to<double>()));
  // Keep the top 62 bits; the dropped tail is below double precision.
  const long shift = bits - 62;
  const BigCount top = value >> shift;
  return from_log(std::log(top.convert_to<double>()) + shift * std::log(2.0));
}

double LogReal::value() const { return zero_ ? 0.0 : std::exp(log_value_); }

LogReal LogReal::operator*(const LogReal& other) const {
  if (zero_ || other.zero_) return zero();
  return from_log(log_value_ + other.log_value_);
}

LogReal LogReal::operator+(const LogReal& other) const {
  if (zero_) return other;
  if (other.zero_) return *this;
  const double hi = std::max(log_value_, other.log_value_);
  const double lo = std::min(log_value_, other.log_value_);
  return from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogReal LogReal::pow(double exponent) const {
  if (zero_) return exponent == 0 ? from_log(0.0) : zero();
  return from_log(log_value_ * exponent);
}

BigCount binom_exact(int n, int k) {
  if (n < 0 || n > kMaxBinomN) {
    throw DomainError("binom_exact supports 0 <= n <= " + std::to_string(kMaxBinomN) +
                      ", got n=" + std::to_string(n));
  }
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (int i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

double log_binom(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

double gen_binom(double x, int r) {
  if (r < 0) throw DomainError("gen_binom requires r >= 0");
  double result = 1.0;
  for (int i = 0; i < r; ++i) result *= (x - i) / (i + 1);
  return result;
}

double solve_binom_x(double m, int r) {
  if (r < 1) throw DomainError("solve_binom_x requires r >= 1");
  if (!(m >= 1)) throw DomainError("solve_binom_x requires m >= 1");

  double lo = r - 1;  // gen_binom(lo, r) == 0 < m
  double hi = r;      // gen_binom(hi, r) == 1 <= m
  for (int step = 0; gen_binom(hi, r) < m; ++step) {
    if (step == kMaxBracketSteps) throw NumericError("solve_binom_x: cannot bracket root");
    lo = hi;
    hi = r - 1 + 2 * (hi - (r - 1));
  }
  if (gen_binom(hi, r) == m) return hi;

  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) return mid;
    if (gen_binom(mid, r) < m) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo < 1e-9) return lo + (hi - lo) / 2;
  throw NumericError("solve_binom_x did not converge in 200 iterations");
}

double entropy(double x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("entropy requires 0 <= x <= 1");
  if (x == 0 || x == 1) return 0.0;
  return -x * std::log(x) - (1 - x) * std::log1p(-x);
}

double theta_residual(double t) {
  return 3 * (1 - t) * entropy(t / (1 - t)) - 2 * entropy(t);
}

double solve_theta() {
  // The residual is positive on (0, t*) and negative on (t*, 1/2]; both
  // sides vanish at 0, so the bracket starts strictly inside.
  double lo = 1e-3;
  double hi = 0.5;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (theta_residual(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

double to_double(const BigCount& value) { return value.convert_to<double>(); }

std::uint64_t to_u64(const BigCount& value) {
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max()) {
    throw DomainError("count does not fit in 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

}  // namespace kneserlab
