// kneser_lab: command-line front end for the kneserlab library.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli_common.hpp"
#include "kneserlab/container.hpp"
#include "kneserlab/errors.hpp"
#include "kneserlab/randomsim.hpp"
#include "kneserlab/shadow.hpp"
#include "suites.hpp"

using namespace kneserlab;

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Rational rational_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const DomainError& e) {
    throw cli::UsageError(flag + ": " + e.what());
  }
}

double real_flag(const std::string& text, const std::string& flag) {
  return rational_flag(text, flag).convert_to<double>();
}

Family family_flag(const std::string& path) {
  try {
    return read_family_file(path);
  } catch (const ParseError& e) {
    throw cli::UsageError(path + ": " + e.what());
  }
}

void add_common(CLI::App* sub, cli::Common& common) {
  sub->add_option("--format", common.format, "Output format: text, csv or json");
  sub->add_option("-o,--output", common.output, "Write to this file (atomically) instead of stdout");
  sub->add_option("--threads", common.threads, "Worker threads (falls back to KNESER_LAB_THREADS)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--cap", common.cap, "Vertex cap for the exact independence-number solver");
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  int n = 0;
  int r = 0;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args, const cli::Common& common) {
  const auto& table = cli::suites();
  const auto it = table.find(args.suite);
  if (it == table.end()) throw cli::UsageError("unknown suite '" + args.suite + "'");
  const cli::Format format = cli::parse_format(common.format);
  cli::SuiteConfig cfg{args.n, args.r, args.trials, args.seed, common.cap, common.thread_setting()};
  const cli::Report report = it->second(cfg);
  cli::write_output(common.output, report.render(format, args.suite));
  return report.passed ? 0 : 1;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  int n = 0;
  int r = 0;
  std::string grid = "0:1:0.05";
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
};

int run_scan(const ScanArgs& args, const cli::Common& common) {
  const cli::Format format = cli::parse_format(common.format);
  std::vector<double> grid;
  try {
    grid = parse_p_grid(args.grid);
  } catch (const DomainError& e) {
    throw cli::UsageError(std::string("--p-grid: ") + e.what());
  }
  const KneserParams params = KneserParams::make(args.n, args.r);
  const KneserTemplate base(params);
  ScanConfig config;
  config.trials = args.trials;
  config.seed = args.seed;
  config.solver.cap = common.cap;
  config.threads = common.thread_setting();
  const ScanResult scan = threshold_scan(base, grid, config);

  std::ostringstream out;
  if (format == cli::Format::kJson) {
    nlohmann::json j = scan_to_json(scan, cli::version());
    j["p_grid"] = args.grid;
    out << j.dump(2) << "\n";
  } else {
    write_scan_csv(out, scan);
  }
  cli::write_output(common.output, out.str());
  for (auto [i, j] : scan.inversions) {
    std::cerr << "note: phat at p=" << scan.points[j].p << " lies significantly below p=" << scan.points[i].p
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- container

struct ContainerArgs {
  std::string graph = "kneser";
  int n = 5;
  int r = 2;
  std::string family;
  std::size_t vertices = 40;
  std::string edge_p = "1/5";
  std::string members;
  std::string a;
  std::string b = "1";
  std::string ordering = "colex";
  std::uint64_t seed = 0;
  bool replay = false;
};

Graph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  Graph g(n);
  std::uint64_t index = 0;
  for (std::size_t v = 1; v < n; ++v) {
    for (std::size_t u = 0; u < v; ++u, ++index) {
      if (rng::to_unit(rng::counter_hash(seed, rng::Stream::kGraph, index)) < p) g.add_edge(u, v);
    }
  }
  return g;
}

Bitset member_list(std::size_t n, const std::string& text) {
  Bitset out(n);
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || v >= n) throw cli::UsageError("--members: bad vertex '" + token + "'");
    out.set(v);
  }
  return out;
}

int run_container(const ContainerArgs& args, const cli::Common& common) {
  const cli::Format format = cli::parse_format(common.format);
  if (args.ordering != "colex" && args.ordering != "random") {
    throw cli::UsageError("--ordering must be colex or random");
  }
  Graph graph;
  Bitset u;
  if (args.graph == "kneser") {
    const Family f = args.family.empty() ? Family::star(args.n, args.r, 1) : family_flag(args.family);
    if (!args.family.empty() && (f.n() != args.n || f.r() != args.r)) {
      throw PreconditionError("family file is in [" + std::to_string(f.n()) + "]^(" + std::to_string(f.r()) +
                              "), not [" + std::to_string(args.n) + "]^(" + std::to_string(args.r) + ")");
    }
    if (small_binom(args.n, args.r) > kSampleCap) throw ResourceError("Kneser graph too large for containers");
    graph = kneser_graph(args.n, args.r).graph;
    u = Bitset(graph.num_vertices());
    for (auto i : f.ranks()) u.set(i);
  } else if (args.graph == "gnp") {
    graph = gnp_graph(args.vertices, real_flag(args.edge_p, "--edge-p"), args.seed);
    u = member_list(args.vertices, args.members);
  } else {
    throw cli::UsageError("--graph must be kneser or gnp");
  }

  const GraphOracle oracle =
      args.ordering == "colex" ? GraphOracle::natural(graph) : GraphOracle::shuffled(graph, args.seed);
  const Rational a = args.a.empty() ? edge_density(graph, u) : rational_flag(args.a, "--a");
  const Rational b = rational_flag(args.b, "--b");
  const ContainerRun run = build_container(oracle, u, a, b);

  std::optional<bool> identical;
  if (args.replay) identical = reconstruct_container(oracle, run.fingerprint, a, b) == run.container;

  std::ostringstream out;
  if (format == cli::Format::kJson) {
    nlohmann::json j = run;
    j["version"] = cli::version();
    j["graph"] = args.graph;
    j["ordering"] = args.ordering;
    j["seed"] = args.seed;
    if (identical) j["reconstruction"] = *identical ? "identical" : "differs";
    out << j.dump(2) << "\n";
  } else {
    const auto& bd = run.bounds;
    out << "graph: " << args.graph << ", " << graph.num_vertices() << " vertices, " << graph.num_edges()
        << " edges, ordering " << args.ordering << "\n";
    out << "parameters: a = " << format_rational(a) << ", b = " << format_rational(b) << ", k = " << run.k << "\n";
    out << "mu(U) = " << format_rational(bd.mu_u) << "\n";
    out << "fingerprint: |T| = " << run.fingerprint.size() << " (T1 = " << run.t1_size << ", T2 = " << run.t2_size
        << ")\n";
    out << "container: |C| = " << run.container.size() << "\n";
    out << "bounds:\n";
    if (bd.fingerprint_bound) {
      out << "  |T| = " << run.fingerprint.size() << " <= " << fmt(*bd.fingerprint_bound) << "\n";
      out << "  mu(C) = " << format_rational(bd.mu_c) << " <= " << fmt(*bd.density_bound) << "\n";
    } else {
      out << "  edgeless graph: no size or density constraint\n";
    }
    out << "  T <= U <= C: " << (bd.containment_ok ? "yes" : "no") << "\n";
    if (identical) out << "reconstruction: " << (*identical ? "identical" : "differs") << "\n";
  }
  cli::write_output(common.output, out.str());
  return identical.value_or(true) ? 0 : 1;
}

// ---------------------------------------------------------------- shadow

struct ShadowArgs {
  std::string family;
  int k = -1;
  double size = 0;
  int r = 0;
  bool kk = false;
};

int run_shadow(const ShadowArgs& args, const cli::Common& common) {
  const cli::Format format = cli::parse_format(common.format);
  nlohmann::json j = {{"version", cli::version()}};
  std::ostringstream text;
  bool ok = true;
  if (args.family.empty()) {
    if (args.r < 1 || args.size < 1) throw cli::UsageError("give --family, or --size and --r");
    const int k = args.k < 0 ? args.r - 1 : args.k;
    const ShadowBound b = lovasz_shadow_bound(args.size, args.r, k);
    j.update({{"size", args.size}, {"r", args.r}, {"k", k}, {"lovasz_x", b.lovasz_x}, {"lovasz_bound", b.lovasz_bound}});
    text << "x = " << fmt(b.lovasz_x) << " (C(x," << args.r << ") = " << fmt(args.size) << ")\n";
    text << "|shadow^(" << k << ")| >= C(x," << k << ") = " << fmt(b.lovasz_bound) << "\n";
  } else {
    const Family f = family_flag(args.family);
    const int k = args.k < 0 ? f.r() - 1 : args.k;
    const std::size_t exact = shadow_exact(f, k).size();
    const ShadowBound b = lovasz_shadow_bound(static_cast<double>(f.size()), f.r(), k);
    ok = static_cast<double>(exact) >= b.lovasz_bound - 1e-6;
    j.update({{"n", f.n()},
              {"r", f.r()},
              {"k", k},
              {"size", f.size()},
              {"exact_size", exact},
              {"lovasz_x", b.lovasz_x},
              {"lovasz_bound", b.lovasz_bound}});
    text << "|f| = " << f.size() << " in [" << f.n() << "]^(" << f.r() << "), x = " << fmt(b.lovasz_x) << "\n";
    text << "|shadow^(" << k << ")| = " << exact << " >= C(x," << k << ") = " << fmt(b.lovasz_bound)
         << (ok ? "" : "  VIOLATED") << "\n";
    if (args.kk) {
      const KkEdgeBound kk = kk_edge_lower_bound(f, SolverConfig{common.cap});
      const std::uint64_t e = disjoint_pairs(f, common.thread_setting());
      ok = ok && kk.bound <= e;
      j["edge_pipeline"] = {{"bound", kk.bound.str()}, {"disjoint_pairs", e}, {"trace", kk.trace}};
      const KkTrace& t = kk.trace;
      text << "edge pipeline: ell = " << t.ell;
      if (t.ell > 0) {
        text << ", centre " << t.center << " (relabelled to " << t.relabel_to << "), |f_x| = " << t.star_size
             << ", deficiency " << t.deficiency.str() << "\n";
        text << "  complements of " << t.outside_ranks.size() << " outside sets, size " << t.complement_size
             << ", shadow " << t.shadow_size << (t.used_lovasz_fallback ? " (Lovasz fallback)" : "") << "\n";
        text << "  bound " << kk.bound.str();
      } else {
        text << "\n  bound 0";
      }
      text << " <= e = " << e << (kk.bound <= e ? "" : "  VIOLATED") << "\n";
    }
  }
  if (format == cli::Format::kJson) {
    cli::write_output(common.output, j.dump(2) + "\n");
  } else {
    cli::write_output(common.output, text.str());
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  int n = 0;
  int r = 0;
  std::string epsilon = "1/10";
  std::string beta;
  std::vector<std::string> m = {"1000"};
  std::vector<std::string> k = {"1"};
  std::string grid = "0:0.9:0.1";
};

int run_bounds(const BoundsArgs& args, const cli::Common& common) {
  const cli::Format format = cli::parse_format(common.format);
  const KneserParams p = KneserParams::make(args.n, args.r);
  const double eps = real_flag(args.epsilon, "--epsilon");
  const std::optional<double> beta =
      args.beta.empty() ? std::nullopt : std::optional<double>(real_flag(args.beta, "--beta"));
  std::vector<double> grid;
  try {
    grid = parse_p_grid(args.grid);
  } catch (const DomainError& e) {
    throw cli::UsageError(std::string("--p-grid: ") + e.what());
  }

  struct Row {
    std::string quantity;
    std::string param;
    std::string value;
  };
  std::vector<Row> rows;
  nlohmann::json j = {{"version", cli::version()},
                      {"n", p.n},
                      {"r", p.r},
                      {"V", p.V.str()},
                      {"N", p.N.str()},
                      {"M", p.M.str()},
                      {"R", p.R.str()}};

  for (const auto& m_text : args.m) {
    const double m = real_flag(m_text, "--m");
    nlohmann::json entry = {{"m", m}};
    if (beta) {
      try {
        const BabycontParams bp = babycont_params(p, eps, *beta, m);
        entry["babycont"] = {{"c_hat", bp.c_hat},
                             {"k1", bp.k1},
                             {"k2", bp.k2},
                             {"log_container_count", bp.log_container_count},
                             {"count_is_estimate", bp.count_is_estimate},
                             {"vacuous", bp.vacuous}};
        rows.push_back({"k1", "m=" + m_text, fmt(bp.k1)});
        rows.push_back({"k2", "m=" + m_text, fmt(bp.k2)});
        rows.push_back({"log_container_count", "m=" + m_text, fmt(bp.log_container_count)});
        rows.push_back({"vacuous", "m=" + m_text, bp.vacuous ? "yes" : "no"});
      } catch (const DomainError& e) {
        entry["babycont"] = e.what();
        rows.push_back({"k1", "m=" + m_text, std::string("n/a: ") + e.what()});
      }
    }
    if (p.M > 0) {
      try {
        const YmBound ym = ym_log_bound(p, eps, m, beta);
        entry["ym_log_bound"] = {{"log_value", ym.log_value}, {"specialized", ym.specialized}, {"beta", ym.beta}};
        rows.push_back({"ym_log_bound", "m=" + m_text, fmt(ym.log_value) + (ym.specialized ? " (closed form)" : "")});
      } catch (const PreconditionError& e) {
        entry["ym_log_bound"] = e.what();
        rows.push_back({"ym_log_bound", "m=" + m_text, "n/a: supply --beta"});
      }
    }
    j["m_table"].push_back(entry);
  }

  if (p.n > 2 * p.r) {
    for (const auto& k_text : args.k) {
      BigCount k;
      try {
        k = BigCount(k_text);
      } catch (const std::exception&) {
        throw cli::UsageError("--k: malformed integer '" + k_text + "'");
      }
      const double lb = supersat_lb(p, k);
      j["supersat"].push_back({{"k", k_text}, {"min_disjoint_pairs", lb}});
      rows.push_back({"supersat_lb", "k=" + k_text, fmt(lb)});
    }
  }

  for (double q : grid) {
    const double log_y = expected_y(p, q).log();
    j["expected_y"].push_back({{"p", q}, {"log", std::isinf(log_y) ? nlohmann::json("-inf") : nlohmann::json(log_y)}});
    rows.push_back({"expected_y_log", "p=" + fmt(q), fmt(log_y)});
  }

  std::ostringstream out;
  if (format == cli::Format::kJson) {
    out << j.dump(2) << "\n";
  } else if (format == cli::Format::kCsv) {
    out << "quantity,param,value\n";
    for (const auto& row : rows) out << row.quantity << "," << row.param << ",\"" << row.value << "\"\n";
  } else {
    out << "K(" << p.n << "," << p.r << "): V = " << p.V.str() << ", N = " << p.N.str() << ", M = " << p.M.str()
        << ", R = " << p.R.str() << "\n";
    for (const auto& row : rows) out << row.quantity << " [" << row.param << "] = " << row.value << "\n";
  }
  cli::write_output(common.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo experiments on Kneser graphs and their random subgraphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::version());

  cli::Common common;

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> suite_names;
  for (const auto& [name, suite] : cli::suites()) suite_names.push_back(name);
  verify_cmd->add_option("suite", verify.suite, "Suite name")->required()->check(CLI::IsMember(suite_names));
  verify_cmd->add_option("--n", verify.n, "Ground set size")->required();
  verify_cmd->add_option("--r", verify.r, "Set size")->required();
  verify_cmd->add_option("--trials", verify.trials, "Random instances for sampling suites");
  verify_cmd->add_option("--seed", verify.seed, "Seed for sampling suites");
  add_common(verify_cmd, common);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Estimate P(alpha(K_p(n,r)) = N) over a grid of p");
  scan_cmd->add_option("--n", scan.n, "Ground set size")->required();
  scan_cmd->add_option("--r", scan.r, "Set size")->required();
  scan_cmd->add_option("--p-grid", scan.grid, "start:stop:step or a comma-separated list");
  scan_cmd->add_option("--trials", scan.trials, "Trials per grid point");
  scan_cmd->add_option("--seed", scan.seed, "Seed");
  add_common(scan_cmd, common);

  ContainerArgs container;
  auto* container_cmd = app.add_subcommand("container", "Build a graph container for a sparse vertex set");
  container_cmd->add_option("--graph", container.graph, "kneser or gnp");
  container_cmd->add_option("--n", container.n, "Kneser ground set size");
  container_cmd->add_option("--r", container.r, "Kneser set size");
  container_cmd->add_option("--family", container.family, "Family file (default: the star at 1)");
  container_cmd->add_option("--vertices", container.vertices, "G(n,p) vertex count");
  container_cmd->add_option("--edge-p", container.edge_p, "G(n,p) edge probability");
  container_cmd->add_option("--members", container.members, "G(n,p) vertex set, comma-separated ids");
  container_cmd->add_option("--a", container.a, "Density parameter a (default: mu(U))");
  container_cmd->add_option("--b", container.b, "Parameter b");
  container_cmd->add_option("--ordering", container.ordering, "colex or random");
  container_cmd->add_option("--seed", container.seed, "Seed for random graphs and orderings");
  container_cmd->add_flag("--replay", container.replay, "Rebuild the container from the fingerprint alone");
  add_common(container_cmd, common);

  ShadowArgs shadow;
  auto* shadow_cmd = app.add_subcommand("shadow", "Exact shadows and the Lovasz bound");
  shadow_cmd->add_option("--family", shadow.family, "Family file");
  shadow_cmd->add_option("--k", shadow.k, "Shadow level (default r-1)");
  shadow_cmd->add_option("--size", shadow.size, "Family size, for the bound alone");
  shadow_cmd->add_option("--r", shadow.r, "Set size, for the bound alone");
  shadow_cmd->add_flag("--kk", shadow.kk, "Run the edge-count pipeline (needs |f| = N)");
  add_common(shadow_cmd, common);

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the counting bounds");
  bounds_cmd->add_option("--n", bounds.n, "Ground set size")->required();
  bounds_cmd->add_option("--r", bounds.r, "Set size")->required();
  bounds_cmd->add_option("--epsilon", bounds.epsilon, "epsilon");
  bounds_cmd->add_option("--beta", bounds.beta, "beta");
  bounds_cmd->add_option("--m", bounds.m, "Edge budgets m")->delimiter(',');
  bounds_cmd->add_option("--k", bounds.k, "Excess sizes k for the supersaturation bound")->delimiter(',');
  bounds_cmd->add_option("--p-grid", bounds.grid, "p values for E[Y]");
  add_common(bounds_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify_cmd) return run_verify(verify, common);
    if (*scan_cmd) return run_scan(scan, common);
    if (*container_cmd) return run_container(container, common);
    if (*shadow_cmd) return run_shadow(shadow, common);
    if (*bounds_cmd) return run_bounds(bounds, common);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
