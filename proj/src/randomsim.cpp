#include "kneserlab/randomsim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "kneserlab/errors.hpp"

namespace kneserlab {

KneserTemplate::KneserTemplate(const KneserParams& params, std::size_t cap)
    : params_(params), star_size_(to_u64(params.N)) {
  if (params.V > cap) {
    throw ResourceError("K(" + std::to_string(params.n) + "," + std::to_string(params.r) + ") has " +
                        params.V.str() + " vertices, above the sampling cap of " + std::to_string(cap));
  }
  vertices_ = Family::full(params.n, params.r);
  const auto members = vertices_.members();
  for (std::uint32_t j = 0; j < members.size(); ++j) {
    for (std::uint32_t i = 0; i < j; ++i) {
      if (adjacent(members[i], members[j])) {
        edges_.push_back(Edge{i, j, std::uint64_t{j} * (j - 1) / 2 + i});
      }
    }
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return rng::counter_hash(seed, rng::Stream::kTrial, trial);
}

namespace {

void check_probability(double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("probability must lie in [0, 1]");
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

struct TrialOutcome {
  bool hit = false;
  double ms = 0;
};

TrialOutcome alpha_trial(const KneserTemplate& base, double p, std::uint64_t seed, std::uint64_t t,
                         const SolverConfig& solver) {
  const auto start = std::chrono::steady_clock::now();
  const SparseKneser g = sample_kp(base, p, trial_seed(seed, t));
  const bool hit = alpha_kp(g, solver) == base.star_size();
  return TrialOutcome{hit, elapsed_ms(start)};
}

ScanPoint summarise(const KneserTemplate& base, double p, const std::vector<TrialOutcome>& outcomes) {
  ScanPoint point;
  point.p = p;
  point.trials = outcomes.size();
  double total_ms = 0;
  for (const auto& o : outcomes) {
    point.successes += o.hit;
    total_ms += o.ms;
  }
  point.phat = static_cast<double>(point.successes) / static_cast<double>(point.trials);
  point.wilson = wilson_interval(point.successes, point.trials);
  point.mean_runtime_ms = total_ms / static_cast<double>(point.trials);
  point.expected_y_log = expected_y(base.params(), p).log();
  return point;
}

void check_scan(const KneserTemplate& base, double p, const ScanConfig& config) {
  check_probability(p);
  if (config.trials == 0) throw DomainError("at least one trial is required");
  if (base.vertices().size() > config.solver.cap) {
    throw ResourceError("K(n,r) has " + std::to_string(base.vertices().size()) +
                        " vertices, above the exact-solver cap of " + std::to_string(config.solver.cap));
  }
}

YStat summarise_y(const KneserTemplate& base, double p, const std::vector<std::uint64_t>& counts) {
  YStat stat;
  stat.expected = expected_y(base.params(), p);
  stat.trials = counts.size();
  double sum = 0;
  for (auto c : counts) sum += static_cast<double>(c);
  stat.observed_mean = sum / static_cast<double>(stat.trials);
  double ss = 0;
  for (auto c : counts) {
    const double dev = static_cast<double>(c) - stat.observed_mean;
    ss += dev * dev;
  }
  const double var = stat.trials > 1 ? ss / static_cast<double>(stat.trials - 1) : 0.0;
  stat.stderr_mean = std::sqrt(var / static_cast<double>(stat.trials));
  return stat;
}

std::string format_double(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

SparseKneser sample_kp(const KneserTemplate& base, double p, std::uint64_t seed) {
  check_probability(p);
  SparseKneser out{&base, p, seed, Graph(base.vertices().size()), 0};
  for (const auto& e : base.edges()) {
    if (rng::to_unit(rng::counter_hash(seed, rng::Stream::kEdge, e.index)) < p) {
      out.graph.add_edge(e.u, e.v);
    }
  }
  out.retained_edges = out.graph.num_edges();
  return out;
}

std::size_t alpha_kp(const SparseKneser& g, SolverConfig config) {
  return independence_number(g.graph, config.cap);
}

LogReal expected_y(const KneserParams& params, double p) {
  check_probability(p);
  const BigCount outside = params.V - params.N;
  if (outside == 0) return LogReal::zero();
  const LogReal base = LogReal::from_count(params.n * outside);
  if (params.M == 0) return base;
  if (p == 1) return LogReal::zero();
  return base * LogReal::from_log(to_double(params.M) * std::log1p(-p));
}

std::uint64_t y_count(const SparseKneser& g) {
  const Family& vertices = g.base->vertices();
  const std::uint64_t ground = ground_mask(vertices.n());
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < vertices.size(); ++b) {
    // A retained neighbour A of B rules out every centre in A.
    std::uint64_t blocked = vertices[b].mask;
    g.graph.neighbors(b).for_each([&](std::size_t a) { blocked |= vertices[a].mask; });
    total += static_cast<std::uint64_t>(std::popcount(ground & ~blocked));
  }
  return total;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return Interval{0, 1};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double center = (phat + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) out.lo = 0;
  if (successes == trials) out.hi = 1;
  return out;
}

ScanPoint prob_alpha_equals_n(const KneserTemplate& base, double p, const ScanConfig& config) {
  check_scan(base, p, config);
  const auto trials = static_cast<std::int64_t>(config.trials);
  std::vector<TrialOutcome> outcomes(config.trials);
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_threads(config.threads))
  for (std::int64_t t = 0; t < trials; ++t) {
    outcomes[static_cast<std::size_t>(t)] =
        alpha_trial(base, p, config.seed, static_cast<std::uint64_t>(t), config.solver);
  }
  return summarise(base, p, outcomes);
}

YStat simulate_y(const KneserTemplate& base, double p, std::uint64_t trials, std::uint64_t seed,
                 Threads threads) {
  check_probability(p);
  if (trials == 0) throw DomainError("at least one trial is required");
  std::vector<std::uint64_t> counts(trials);
  const auto total = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::int64_t t = 0; t < total; ++t) {
    counts[static_cast<std::size_t>(t)] =
        y_count(sample_kp(base, p, trial_seed(seed, static_cast<std::uint64_t>(t))));
  }
  return summarise_y(base, p, counts);
}

namespace serial {

ScanPoint prob_alpha_equals_n(const KneserTemplate& base, double p, const ScanConfig& config) {
  check_scan(base, p, config);
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    outcomes.push_back(alpha_trial(base, p, config.seed, t, config.solver));
  }
  return summarise(base, p, outcomes);
}

YStat simulate_y(const KneserTemplate& base, double p, std::uint64_t trials, std::uint64_t seed) {
  check_probability(p);
  if (trials == 0) throw DomainError("at least one trial is required");
  std::vector<std::uint64_t> counts;
  counts.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t) counts.push_back(y_count(sample_kp(base, p, trial_seed(seed, t))));
  return summarise_y(base, p, counts);
}

}  // namespace serial

ScanResult threshold_scan(const KneserTemplate& base, const std::vector<double>& p_grid,
                          const ScanConfig& config) {
  ScanResult out;
  out.params = base.params();
  out.seed = config.seed;
  out.trials = config.trials;
  for (double p : p_grid) out.points.push_back(prob_alpha_equals_n(base, p, config));
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      const auto& lo = out.points[i];
      const auto& hi = out.points[j];
      if (lo.p < hi.p && hi.wilson.hi < lo.wilson.lo) out.inversions.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<double> parse_p_grid(const std::string& spec) {
  std::vector<double> grid;
  auto parse = [&](const std::string& token) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed probability '" + token + "'");
    }
    if (used != token.size()) throw DomainError("malformed probability '" + token + "'");
    return v;
  };
  if (std::count(spec.begin(), spec.end(), ':') == 2) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    const double start = parse(spec.substr(0, c1));
    const double stop = parse(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse(spec.substr(c2 + 1));
    if (!(step > 0) || stop < start) throw DomainError("p-grid needs start <= stop and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
  } else {
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (!token.empty()) grid.push_back(parse(token));
    }
  }
  if (grid.empty()) throw DomainError("empty p-grid");
  for (double p : grid) check_probability(p);
  return grid;
}

void write_scan_csv(std::ostream& out, const ScanResult& scan) {
  out << "p,trials,successes,phat,wilson_lo,wilson_hi,expected_y_log\n";
  for (const auto& pt : scan.points) {
    out << format_double(pt.p) << ',' << pt.trials << ',' << pt.successes << ','
        << format_double(pt.phat) << ',' << format_double(pt.wilson.lo) << ','
        << format_double(pt.wilson.hi) << ',' << format_double(pt.expected_y_log) << '\n';
  }
}

nlohmann::json scan_to_json(const ScanResult& scan, const std::string& version) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : scan.points) {
    points.push_back({{"p", pt.p},
                      {"trials", pt.trials},
                      {"successes", pt.successes},
                      {"phat", pt.phat},
                      {"wilson_lo", pt.wilson.lo},
                      {"wilson_hi", pt.wilson.hi},
                      {"expected_y_log", format_double(pt.expected_y_log)}});
  }
  nlohmann::json inversions = nlohmann::json::array();
  for (auto [i, j] : scan.inversions) inversions.push_back({i, j});
  return nlohmann::json{{"version", version},
                        {"n", scan.params.n},
                        {"r", scan.params.r},
                        {"seed", scan.seed},
                        {"trials", scan.trials},
                        {"points", points},
                        {"inversions", inversions}};
}

}  // namespace kneserlab
