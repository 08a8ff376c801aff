#include "kneserlab/container.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "kneserlab/errors.hpp"

namespace kneserlab {

namespace mp = boost::multiprecision;

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mp::cpp_int parse_integer(const std::string& s) {
  std::string body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  if (!all_digits(body)) throw DomainError("malformed number '" + s + "'");
  mp::cpp_int v(body);
  return negative ? mp::cpp_int(-v) : v;
}

double to_d(const Rational& q) { return q.convert_to<double>(); }

mp::cpp_int ceil_rational(const Rational& q) {
  const mp::cpp_int num = mp::numerator(q);
  const mp::cpp_int den = mp::denominator(q);
  mp::cpp_int quot = num / den;  // truncates toward zero
  if (num % den != 0 && num > 0) quot += 1;
  return quot;
}

struct PassResult {
  Bitset t;
  Bitset a;
  std::size_t k = 0;
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  std::vector<InsertionRecord> insertions;
};

void check_parameters(const Rational& a, const Rational& b) {
  if (a < 0) throw DomainError("container parameter a must be >= 0");
  if (b <= 0) throw DomainError("container parameter b must be > 0");
}

PassResult run_pass(const GraphOracle& oracle, const Bitset& membership, const Rational& a,
                    const Rational& b) {
  const Graph& g = oracle.graph();
  const std::size_t size = oracle.num_vertices();
  const Rational bd = b * oracle.average_degree();

  PassResult out;
  out.k = least_integer_above_sqrt(a * bd);
  // |S| >= bd  <=>  |S| >= ceil(bd) for integer |S|.
  const auto s_threshold = ceil_rational(bd).convert_to<std::size_t>();
  out.t = Bitset(size);
  out.a = Bitset(size, true);

  // backward[w]: backward neighbours of w currently in T. Gamma(T) is
  // {w : backward[w] >= k}.
  std::vector<std::size_t> backward(size, 0);
  auto take = [&](std::size_t v, int rule) {
    out.a.reset(v);
    if (!membership.test(v)) return;
    out.t.set(v);
    out.insertions.push_back(InsertionRecord{v, rule, backward[v]});
    (rule == 1 ? out.t1 : out.t2)++;
    g.neighbors(v).for_each([&](std::size_t w) {
      if (oracle.position(w) > oracle.position(v)) ++backward[w];
    });
  };

  for (std::size_t v : oracle.order()) {
    if (backward[v] >= out.k) {
      take(v, 1);
      continue;
    }
    std::size_t s = 0;
    g.neighbors(v).for_each([&](std::size_t w) {
      if (oracle.position(w) > oracle.position(v) && backward[w] < out.k) ++s;
    });
    if (s >= s_threshold) take(v, 2);
  }
  return out;
}

// x <= 2 c sqrt(q) + rest, decided exactly.
bool within_sqrt_bound(const Rational& x, const Rational& c, const Rational& q, const Rational& rest) {
  const Rational lhs = x - rest;
  if (lhs <= 0) return true;
  return lhs * lhs <= 4 * c * c * q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const mp::cpp_int num = parse_integer(text.substr(0, slash));
    const mp::cpp_int den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("rational with zero denominator '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (!frac.empty() && !all_digits(frac)) throw DomainError("malformed number '" + text + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty() && frac.empty()) throw DomainError("malformed number '" + text + "'");
    const mp::cpp_int w = whole.empty() ? mp::cpp_int(0) : parse_integer(whole);
    const mp::cpp_int f = frac.empty() ? mp::cpp_int(0) : mp::cpp_int(frac);
    mp::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational q(w * scale + f, scale);
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(text));
}

std::string format_rational(const Rational& q) { return q.str(); }

GraphOracle::GraphOracle(const Graph& g, std::vector<std::size_t> order)
    : graph_(&g), order_(std::move(order)), position_(g.num_vertices(), g.num_vertices()) {
  if (order_.size() != g.num_vertices()) throw DomainError("ordering must list every vertex once");
  for (std::size_t i = 0; i < order_.size(); ++i) {
    const std::size_t v = order_[i];
    if (v >= g.num_vertices() || position_[v] != g.num_vertices()) {
      throw DomainError("ordering must be a permutation of the vertices");
    }
    position_[v] = i;
  }
  average_degree_ = g.num_vertices() == 0
                        ? Rational(0)
                        : Rational(mp::cpp_int(2 * g.num_edges()), mp::cpp_int(g.num_vertices()));
  max_degree_ = g.max_degree();
}

GraphOracle GraphOracle::natural(const Graph& g) {
  std::vector<std::size_t> order(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  return GraphOracle(g, std::move(order));
}

GraphOracle GraphOracle::shuffled(const Graph& g, std::uint64_t seed) {
  std::vector<std::size_t> order(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng::CounterEngine engine(seed, rng::Stream::kOrdering);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[engine.below(i)]);
  return GraphOracle(g, std::move(order));
}

std::vector<std::size_t> GraphOracle::forward_neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  graph_->neighbors(v).for_each([&](std::size_t w) {
    if (position_[w] > position_[v]) out.push_back(w);
  });
  std::sort(out.begin(), out.end(), [&](std::size_t x, std::size_t y) { return position_[x] < position_[y]; });
  return out;
}

Rational edge_density(const Graph& g, const Bitset& u) {
  if (g.num_vertices() == 0) return Rational(0);
  return Rational(mp::cpp_int(g.induced_edges(u)), mp::cpp_int(g.num_vertices()));
}

std::size_t least_integer_above_sqrt(const Rational& q) {
  if (q < 0) throw DomainError("square root of a negative rational");
  // floor(sqrt(q)) == isqrt(floor(q)).
  const mp::cpp_int floor_q = mp::numerator(q) / mp::denominator(q);
  const mp::cpp_int s = mp::sqrt(floor_q);
  return s.convert_to<std::size_t>() + 1;
}

CertifiedBounds certify(const GraphOracle& oracle, const Bitset& u, const Bitset& t, const Bitset& c,
                        const Rational& a, const Rational& b) {
  const Graph& g = oracle.graph();
  CertifiedBounds out;
  out.mu_u = edge_density(g, u);
  out.mu_c = edge_density(g, c);
  out.containment_ok = t.is_subset_of(u) && u.is_subset_of(c);

  const Rational bd = b * oracle.average_degree();
  if (bd == 0) {
    out.fingerprint_ok = true;
    out.density_ok = true;
    return out;
  }
  const Rational vertices(mp::cpp_int(g.num_vertices()));
  const Rational delta(mp::cpp_int(oracle.max_degree()));
  const Rational ratio = a / bd;
  out.fingerprint_ok =
      within_sqrt_bound(Rational(mp::cpp_int(t.count())), vertices, ratio, vertices / bd);
  out.density_ok = within_sqrt_bound(out.mu_c, delta, ratio, delta / bd + bd);

  const double root = std::sqrt(to_d(ratio));
  out.fingerprint_bound = 2 * to_d(vertices) * root + to_d(vertices / bd);
  out.density_bound = 2 * to_d(delta) * root + to_d(delta / bd) + to_d(bd);
  return out;
}

ContainerRun build_container(const GraphOracle& oracle, const Bitset& u, const Rational& a,
                             const Rational& b) {
  check_parameters(a, b);
  if (u.size() != oracle.num_vertices()) throw DomainError("vertex set has the wrong universe size");
  const Rational mu_u = edge_density(oracle.graph(), u);
  if (mu_u > a) {
    throw PreconditionError("mu(U) = " + format_rational(mu_u) + " exceeds a = " + format_rational(a));
  }

  PassResult pass = run_pass(oracle, u, a, b);
  const Bitset c = pass.a | pass.t;

  ContainerRun run;
  run.fingerprint = pass.t.to_vector();
  run.container = c.to_vector();
  run.k = pass.k;
  run.a = a;
  run.b = b;
  run.t1_size = pass.t1;
  run.t2_size = pass.t2;
  run.insertions = std::move(pass.insertions);
  run.bounds = certify(oracle, u, pass.t, c, a, b);

  if (!run.bounds.containment_ok) throw InvariantError("container run violates T <= U <= C");
  if (!run.bounds.fingerprint_ok) throw InvariantError("container run violates the fingerprint size bound");
  if (!run.bounds.density_ok) throw InvariantError("container run violates the container density bound");
  if (run.t1_size + run.t2_size != run.fingerprint.size()) {
    throw InvariantError("container run: T1 and T2 do not partition T");
  }
  return run;
}

std::vector<std::size_t> reconstruct_container(const GraphOracle& oracle,
                                               std::span<const std::size_t> fingerprint,
                                               const Rational& a, const Rational& b) {
  check_parameters(a, b);
  Bitset t(oracle.num_vertices());
  for (auto v : fingerprint) {
    if (v >= oracle.num_vertices()) throw DomainError("fingerprint vertex out of range");
    t.set(v);
  }
  const PassResult pass = run_pass(oracle, t, a, b);
  return (pass.a | pass.t).to_vector();
}

ContainerRun kneser_container(const GraphOracle& kneser, const Family& u, std::uint64_t m,
                              const Rational& beta) {
  if (small_binom(u.n(), u.r()) != kneser.num_vertices()) {
    throw DomainError("oracle is not the Kneser graph of the family's shape");
  }
  Bitset members(kneser.num_vertices());
  for (auto i : u.ranks()) members.set(i);
  const Rational a(mp::cpp_int(m), mp::cpp_int(kneser.num_vertices()));
  return build_container(kneser, members, a, beta);
}

BabycontParams babycont_params(const KneserParams& p, double epsilon, double beta, double m) {
  const double n = p.n;
  if (!(epsilon > 0) || !(epsilon * n <= p.r && p.r <= (0.5 - epsilon) * n)) {
    throw DomainError("babycont_params requires epsilon*n <= r <= (1/2 - epsilon)*n");
  }
  if (!(beta > 0)) throw DomainError("babycont_params requires beta > 0");
  if (!(m >= 0)) throw DomainError("babycont_params requires m >= 0");

  const double big_n = to_double(p.N);
  const double big_m = to_double(p.M);
  const double v = to_double(p.V);

  BabycontParams out;
  out.epsilon = epsilon;
  out.beta = beta;
  out.m = m;
  out.c_hat = 20.0 / (epsilon * epsilon);
  out.k1 = out.c_hat * (big_n / (beta * big_m) + std::sqrt(m * big_n / (beta * big_m)));
  out.k2 = out.k1 + out.c_hat * beta * big_n;
  out.vacuous = out.k1 >= v / 3;

  const double top = std::floor(out.k1);
  if (top >= v) {
    out.log_container_count = v * std::log(2.0);
  } else if (top <= 2e6) {
    LogReal sum;
    for (double j = 0; j <= top; j += 1) sum = sum + LogReal::from_log(log_binom(v, j));
    out.log_container_count = sum.log();
  } else {
    const double frac = top / v;
    out.log_container_count = frac <= 0.5 ? v * entropy(frac) : v * std::log(2.0);
    out.count_is_estimate = true;
  }
  return out;
}

double ym_log_bound_general(const KneserParams& p, double epsilon, double m, double beta) {
  if (!(epsilon > 0)) throw DomainError("ym_log_bound requires epsilon > 0");
  if (!(beta > 0)) throw DomainError("ym_log_bound requires beta > 0");
  const double c_hat = 20.0 / (epsilon * epsilon);
  const double big_n = to_double(p.N);
  const double big_m = to_double(p.M);
  return std::log(2.0) + c_hat * p.n *
                             (beta * big_n + 2 * big_n / (beta * big_m) +
                              std::sqrt(4 * m * big_n / (beta * big_m)));
}

YmBound ym_log_bound(const KneserParams& p, double epsilon, double m, std::optional<double> beta) {
  if (!(epsilon > 0)) throw DomainError("ym_log_bound requires epsilon > 0");
  if (p.M == 0) throw DomainError("ym_log_bound requires M > 0 (n > 2r)");
  const double log_n = LogReal::from_count(p.N).log();
  const double log_m = LogReal::from_count(p.M).log();
  const double c_hat = 20.0 / (epsilon * epsilon);

  YmBound out;
  if (m > 0 && std::log(m) >= log_n - 0.5 * log_m) {
    out.specialized = true;
    out.beta = std::exp((std::log(m) - log_n - log_m) / 3);
    out.log_value = 10 * c_hat * p.n * std::exp((std::log(m) + 2 * log_n - log_m) / 3);
    return out;
  }
  if (!beta) {
    throw PreconditionError("m < N / M^(1/2): the closed form does not apply; supply beta");
  }
  out.beta = *beta;
  out.log_value = ym_log_bound_general(p, epsilon, m, *beta);
  return out;
}

double supersat_lb(const KneserParams& p, const BigCount& k) {
  p.require_above_half();
  if (k < 0 || k > p.V - p.N) throw DomainError("supersat_lb requires 0 <= k <= V - N");
  return to_double(k * p.M) / 2.0;
}

void to_json(nlohmann::json& j, const ContainerRun& run) {
  nlohmann::json insertions = nlohmann::json::array();
  for (const auto& rec : run.insertions) {
    insertions.push_back({{"vertex", rec.vertex}, {"rule", rec.rule}, {"backward_in_t", rec.backward_in_t}});
  }
  const auto& b = run.bounds;
  j = nlohmann::json{
      {"fingerprint", run.fingerprint},
      {"container", run.container},
      {"k", run.k},
      {"a", format_rational(run.a)},
      {"b", format_rational(run.b)},
      {"t1_size", run.t1_size},
      {"t2_size", run.t2_size},
      {"insertions", insertions},
      {"bounds",
       {{"mu_u", format_rational(b.mu_u)},
        {"mu_c", format_rational(b.mu_c)},
        {"fingerprint_size", run.fingerprint.size()},
        {"fingerprint_bound", b.fingerprint_bound ? nlohmann::json(*b.fingerprint_bound) : nlohmann::json()},
        {"density_bound", b.density_bound ? nlohmann::json(*b.density_bound) : nlohmann::json()},
        {"containment_ok", b.containment_ok},
        {"fingerprint_ok", b.fingerprint_ok},
        {"density_ok", b.density_ok}}},
  };
}

}  // namespace kneserlab
