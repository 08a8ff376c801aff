#pragma once

// Graph containers: a single ordered pass that assigns to each sparse vertex
// set U a small fingerprint T and a container C(T) depending only on T.
// Thresholds are compared in exact rational arithmetic.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "kneserlab/kneser.hpp"

namespace kneserlab {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p/q", integers, and finite decimals ("0.25" is exactly 1/4).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/// A graph together with the fixed linear order the pass walks.
class GraphOracle {
 public:
  /// `order` must be a permutation of the vertex ids.
  GraphOracle(const Graph& g, std::vector<std::size_t> order);

  static GraphOracle natural(const Graph& g);
  /// Fisher-Yates order drawn from the counter-based stream of `seed`.
  static GraphOracle shuffled(const Graph& g, std::uint64_t seed);

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t num_vertices() const noexcept { return graph_->num_vertices(); }
  std::span<const std::size_t> order() const noexcept { return order_; }
  std::size_t position(std::size_t v) const noexcept { return position_[v]; }
  /// d = 2|E| / |V|.
  const Rational& average_degree() const noexcept { return average_degree_; }
  std::size_t max_degree() const noexcept { return max_degree_; }
  /// F(v): neighbours after v in the order.
  std::vector<std::size_t> forward_neighbors(std::size_t v) const;

 private:
  const Graph* graph_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
  Rational average_degree_;
  std::size_t max_degree_ = 0;
};

/// mu(U) = e(G[U]) / |V|.
Rational edge_density(const Graph& g, const Bitset& u);

/// Least integer strictly greater than sqrt(q), q >= 0.
std::size_t least_integer_above_sqrt(const Rational& q);

struct InsertionRecord {
  std::size_t vertex = 0;
  /// 1: had >= k backward neighbours in T; 2: |F(v) \ Gamma(T)| >= bd.
  int rule = 0;
  std::size_t backward_in_t = 0;
};

struct CertifiedBounds {
  Rational mu_u;
  Rational mu_c;
  /// 2|V|(a/bd)^(1/2) + |V|/(bd); nullopt when d = 0 (unbounded).
  std::optional<double> fingerprint_bound;
  /// 2 Delta (a/bd)^(1/2) + Delta/(bd) + bd; nullopt when d = 0.
  std::optional<double> density_bound;
  bool containment_ok = false;
  bool fingerprint_ok = false;
  bool density_ok = false;

  bool all_ok() const noexcept { return containment_ok && fingerprint_ok && density_ok; }
};

struct ContainerRun {
  std::vector<std::size_t> fingerprint;
  std::vector<std::size_t> container;
  std::size_t k = 0;
  Rational a;
  Rational b;
  std::size_t t1_size = 0;
  std::size_t t2_size = 0;
  std::vector<InsertionRecord> insertions;
  CertifiedBounds bounds;
};

/// Runs the pass for U with parameters a >= mu(U) and b > 0. Throws
/// PreconditionError when mu(U) > a and InvariantError if a certified bound fails.
ContainerRun build_container(const GraphOracle& oracle, const Bitset& u, const Rational& a,
                             const Rational& b);

/// Replays the pass with T as the membership test; equals build_container's C.
std::vector<std::size_t> reconstruct_container(const GraphOracle& oracle,
                                               std::span<const std::size_t> fingerprint,
                                               const Rational& a, const Rational& b);

/// Exact re-check of the three guarantees for an arbitrary (T, U, C).
CertifiedBounds certify(const GraphOracle& oracle, const Bitset& u, const Bitset& t,
                        const Bitset& c, const Rational& a, const Rational& b);

/// Container for a family in K(n, r) with a = m / V and b = beta.
ContainerRun kneser_container(const GraphOracle& kneser, const Family& u, std::uint64_t m,
                              const Rational& beta);

struct BabycontParams {
  double epsilon = 0;
  double beta = 0;
  double m = 0;
  /// 20 / epsilon^2.
  double c_hat = 0;
  double k1 = 0;
  double k2 = 0;
  /// log of sum_{j <= k1} C(V, j), the number of containers.
  double log_container_count = 0;
  /// True when the count above is the entropy upper estimate, not the exact sum.
  bool count_is_estimate = false;
  /// k1 >= V/3: outside the range where the count bound is usable.
  bool vacuous = false;
};

BabycontParams babycont_params(const KneserParams& p, double epsilon, double beta, double m);

struct YmBound {
  double log_value = 0;
  /// Whether the closed form with beta = (m/(NM))^(1/3) applied.
  bool specialized = false;
  double beta = 0;
};

/// log of the upper bound on Y_m(n, r). The closed form needs m >= N / M^(1/2);
/// below that the general form is used with the supplied beta.
YmBound ym_log_bound(const KneserParams& p, double epsilon, double m,
                     std::optional<double> beta = std::nullopt);

/// log of the general-form bound 2 exp(C n (beta N + 2N/(beta M) + (4mN/(beta M))^(1/2))).
double ym_log_bound_general(const KneserParams& p, double epsilon, double m, double beta);

/// k M / 2: minimum disjoint pairs in any family of size N + k (n > 2r).
double supersat_lb(const KneserParams& p, const BigCount& k);

void to_json(nlohmann::json& j, const ContainerRun& run);

}  // namespace kneserlab
