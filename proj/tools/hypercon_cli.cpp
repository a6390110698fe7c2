// Command-line front end. Talks to the library exclusively through the C API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercon/hypercon.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct GraphDeleter {
  void operator()(hc_hypergraph* h) const { hc_hypergraph_free(h); }
};
struct ResultDeleter {
  void operator()(hc_result* r) const { hc_result_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { hc_string_free(s); }
};
using GraphPtr = std::unique_ptr<hc_hypergraph, GraphDeleter>;
using ResultPtr = std::unique_ptr<hc_result, ResultDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code_for(hc_status s) {
  switch (s) {
    case HC_OK: return kExitOk;
    case HC_ERR_SOLVER: return kExitSolver;
    case HC_ERR_PARSE:
    case HC_ERR_INVALID_ARGUMENT:
    case HC_ERR_IO: return kExitUsage;
    case HC_ERR_INTERNAL: return kExitSolver;
  }
  return kExitSolver;
}

// Thrown to unwind with a status; main() turns it into a message and exit code.
struct Failure {
  hc_status status;
  std::string message;
};

void check(hc_status s, const std::string& context) {
  if (s != HC_OK) throw Failure{s, context + ": " + hc_last_error()};
}

struct SolverFlags {
  std::string strategy = "dominance";
  int restarts = 100;
  std::uint64_t seed = 0;
  double eps = 1e-8;
  double delta0 = 2.0;
  double delta_max = 10.0;
  std::vector<double> sigma{0.25, 0.5, 0.75};
  std::string lambda_rule = "gradient";
  std::string stop_norm = "inf";
  int max_iter = 10000;
  int threads = 0;

  void attach(CLI::App* cmd, bool with_strategy = true) {
    if (with_strategy) {
      cmd->add_option("--strategy", strategy, "Candidate vertices: all, dominance or min-degree")
          ->check(CLI::IsMember({"all", "dominance", "min-degree", "min_degree"}))
          ->capture_default_str();
    }
    cmd->add_option("--restarts", restarts, "Random starts per candidate vertex")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Base RNG seed")->capture_default_str();
    cmd->add_option("--eps", eps, "Step-norm stopping tolerance")->capture_default_str();
    cmd->add_option("--delta0", delta0, "Initial trust radius")->capture_default_str();
    cmd->add_option("--delta-max", delta_max, "Largest trust radius")->capture_default_str();
    cmd->add_option("--sigma", sigma, "Ratio thresholds sigma0,sigma1,sigma2")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    cmd->add_option("--lambda-rule", lambda_rule, "Multiplier: gradient or adjacency")
        ->check(CLI::IsMember({"gradient", "adjacency"}))
        ->capture_default_str();
    cmd->add_option("--stop-norm", stop_norm, "Norm for the step stopping test: inf or euclid")
        ->check(CLI::IsMember({"inf", "euclid"}))
        ->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "Outer iteration cap per run")->capture_default_str();
    cmd->add_option("--threads", threads, "Worker threads (0: HYPERCON_THREADS or all cores)")->capture_default_str();
  }

  hc_config config() const {
    hc_config c;
    hc_config_default(&c);
    c.restarts = restarts;
    c.seed = seed;
    c.eps = eps;
    c.delta0 = delta0;
    c.delta_max = delta_max;
    c.sigma0 = sigma.at(0);
    c.sigma1 = sigma.at(1);
    c.sigma2 = sigma.at(2);
    c.lambda_rule = lambda_rule == "adjacency" ? HC_LAMBDA_ADJACENCY : HC_LAMBDA_GRADIENT;
    c.stop_norm = stop_norm == "euclid" ? HC_STOP_EUCLID : HC_STOP_INF;
    c.max_outer_iter = max_iter;
    c.threads = threads;
    check(hc_parse_strategy(strategy.c_str(), &c.strategy), "strategy");
    return c;
  }
};

GraphPtr load(const std::string& path) {
  hc_hypergraph* h = nullptr;
  check(hc_hypergraph_read_file(path.c_str(), &h), path);
  return GraphPtr(h);
}

ResultPtr compute(const hc_hypergraph* h, const hc_config& cfg) {
  hc_result* r = nullptr;
  check(hc_compute(h, &cfg, &r), "compute");
  return ResultPtr(r);
}

std::string fmt(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{HC_ERR_IO, "cannot write '" + path + "'"};
  out << text;
}

// ---------------------------------------------------------------- compute

struct ComputeFlags {
  std::string input;
  std::string output;
  int indent = 2;
  SolverFlags solver;
};

int run_compute(const ComputeFlags& f) {
  GraphPtr h = load(f.input);
  const hc_config cfg = f.solver.config();
  if (cfg.strategy == HC_STRATEGY_MIN_DEGREE) {
    std::cerr << "note: min-degree candidates are exact only for sunflowers, hypercycles, squids and loose paths\n";
  }
  ResultPtr r = compute(h.get(), cfg);
  char* json = nullptr;
  check(hc_result_to_json(r.get(), f.indent, &json), "report");
  StringPtr owned(json);
  write_text(f.output, std::string(json) + "\n");
  std::cerr << "alpha = " << fmt(hc_result_alpha(r.get()), 12);
  if (hc_result_connected(r.get())) {
    std::cerr << " at vertex " << hc_result_argmin(r.get()) << "\n";
  } else {
    std::cerr << " (disconnected, no solver runs)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- gen

struct GenFlags {
  std::string kind;
  int k = 3;
  int n = 0;
  int d = 0;
  int s = 0;
  int len = 0;
  std::string output;
};

int run_gen(const GenFlags& f) {
  hc_generator spec{};
  check(hc_parse_graph_class(f.kind.c_str(), &spec.kind), "class");
  spec.k = f.k;
  spec.n = f.n;
  spec.petals = f.d;
  spec.length = f.len;
  if (spec.kind == HC_CLASS_HYPERCYCLE) {
    spec.cycle_length = f.s;
  } else {
    spec.overlap = f.s;
  }
  hc_hypergraph* raw = nullptr;
  check(hc_hypergraph_generate(&spec, &raw), "gen");
  GraphPtr h(raw);
  if (f.output.empty() || f.output == "-") {
    char* text = nullptr;
    check(hc_hypergraph_write(h.get(), &text), "write");
    StringPtr owned(text);
    std::cout << text;
  } else {
    check(hc_hypergraph_write_file(h.get(), f.output.c_str()), "write");
    std::cerr << "wrote " << f.output << ": n=" << hc_hypergraph_n(h.get()) << " m=" << hc_hypergraph_m(h.get())
              << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string name;
  std::vector<int> n_list;
  std::string output;
  SolverFlags solver;
};

int run_bench(BenchFlags f) {
  const bool two_path = f.name == "two-path";
  if (f.n_list.empty()) f.n_list = two_path ? std::vector<int>{10, 20, 30} : std::vector<int>{10, 20, 30, 40, 50};
  std::sort(f.n_list.begin(), f.n_list.end());
  const hc_config cfg = f.solver.config();
  if (cfg.strategy == HC_STRATEGY_MIN_DEGREE) {
    std::cerr << "note: min-degree candidate selection is a heuristic outside sunflowers, hypercycles, squids and "
                 "loose paths\n";
  }

  std::ostringstream csv;
  csv << "n,alpha,ratio,iter,time_s,upper_bound\n";
  for (int n : f.n_list) {
    hc_generator spec{};
    if (two_path) {
      if (n < 6 || n % 2 != 0) throw Failure{HC_ERR_INVALID_ARGUMENT, "two-path needs even n >= 6"};
      spec.kind = HC_CLASS_S_PATH;
      spec.k = 4;
      spec.overlap = 2;
      spec.length = (n - 2) / 2;
    } else {
      spec.kind = HC_CLASS_COMPLETE_MINUS;
      spec.k = 3;
      spec.n = n;
    }
    hc_hypergraph* raw = nullptr;
    check(hc_hypergraph_generate(&spec, &raw), "bench n=" + std::to_string(n));
    GraphPtr h(raw);
    ResultPtr r = compute(h.get(), cfg);

    hc_vertex_summary best{};
    const int argmin = hc_result_argmin(r.get());
    for (size_t i = 0; i < hc_result_vertex_count(r.get()); ++i) {
      hc_vertex_summary v;
      check(hc_result_vertex(r.get(), i, &v), "result");
      if (v.vertex == argmin) best = v;
    }
    std::string bound;
    if (!two_path) {
      double ub = 0.0;
      check(hc_oracle_upper_bound_vertex_cut(n, 3, n - 3, &ub), "upper bound");
      bound = fmt(ub);
    }
    csv << n << ',' << fmt(hc_result_alpha(r.get())) << ',' << fmt(best.hit_ratio, 4) << ','
        << fmt(best.mean_iterations, 6) << ',' << fmt(best.mean_seconds, 4) << ',' << bound << '\n';
    std::cerr << "n=" << n << " alpha=" << fmt(hc_result_alpha(r.get())) << "\n";
  }
  write_text(f.output, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------- oracle

struct OracleFlags {
  std::string input;
  int vertex = 0;
  int depth = 30;
  int refine = 3;
  double tol = 1e-3;
  int l = 4;
  SolverFlags solver;
};

int report_check(bool pass, const std::string& what) {
  std::cout << (pass ? "PASS " : "FAIL ") << what << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

int run_oracle_grid(const OracleFlags& f) {
  GraphPtr h = load(f.input);
  double grid = 0.0;
  check(hc_oracle_grid_alpha(h.get(), f.vertex, f.depth, f.refine, &grid), "grid oracle");
  hc_config cfg = f.solver.config();
  double solved = 0.0;
  if (f.vertex == 0) {
    ResultPtr r = compute(h.get(), cfg);
    solved = hc_result_alpha(r.get());
  } else {
    // Compare a single alpha_j: run every vertex and pick j.
    cfg.strategy = HC_STRATEGY_ALL;
    ResultPtr r = compute(h.get(), cfg);
    for (size_t i = 0; i < hc_result_vertex_count(r.get()); ++i) {
      hc_vertex_summary v;
      check(hc_result_vertex(r.get(), i, &v), "result");
      if (v.vertex == f.vertex) solved = v.alpha_j;
    }
  }
  std::cout << "grid    = " << fmt(grid, 12) << "\n";
  std::cout << "compute = " << fmt(solved, 12) << "\n";
  const double diff = std::abs(grid - solved);
  return report_check(diff <= f.tol, "|grid - compute| = " + fmt(diff, 3) + " <= " + fmt(f.tol, 3));
}

int run_oracle_beta(const OracleFlags& f) {
  const hc_config cfg = f.solver.config();
  double beta = 0.0;
  check(hc_oracle_beta_two_path(f.l, &cfg, &beta), "beta oracle");
  std::cout << "beta(" << f.l << ") = " << fmt(beta, 12) << "\n";
  std::cout << "alpha(2-path, n=" << f.l + 2 << ") = 1 + beta = " << fmt(1.0 + beta, 12) << "\n";
  return report_check(beta <= -0.5 + 1e-9, "beta <= -1/2");
}

int run_oracle_edge_cut(const OracleFlags& f) {
  GraphPtr h = load(f.input);
  int e = 0;
  check(hc_oracle_edge_connectivity(h.get(), &e), "edge-cut oracle");
  ResultPtr r = compute(h.get(), f.solver.config());
  const double alpha = hc_result_alpha(r.get());
  const double bound = static_cast<double>(hc_hypergraph_n(h.get())) / hc_hypergraph_k(h.get()) * alpha;
  std::cout << "e(G)        = " << e << "\n";
  std::cout << "alpha       = " << fmt(alpha, 12) << "\n";
  std::cout << "(n/k) alpha = " << fmt(bound, 12) << "\n";
  return report_check(e >= bound - 1e-6, "e(G) >= (n/k) alpha");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic connectivity of uniform hypergraphs"};
  app.set_version_flag("--version", std::string(hc_version()));
  app.require_subcommand(1);

  ComputeFlags compute_flags;
  auto* compute_cmd = app.add_subcommand("compute", "Compute alpha(G) for a hypergraph file");
  compute_cmd->add_option("--input,-i", compute_flags.input, "Hypergraph file")->required();
  compute_cmd->add_option("--json,-o", compute_flags.output, "Write the JSON report here (default stdout)");
  compute_cmd->add_option("--indent", compute_flags.indent, "JSON indentation, -1 for one line")->capture_default_str();
  compute_flags.solver.attach(compute_cmd);

  GenFlags gen_flags;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a structured hypergraph");
  gen_cmd->add_option("class", gen_flags.kind,
                      "sunflower, hypercycle, squid, s-path, loose-path, complete or complete-minus")
      ->required();
  gen_cmd->add_option("--k", gen_flags.k, "Edge size")->capture_default_str();
  gen_cmd->add_option("--n", gen_flags.n, "Vertex count (complete, complete-minus)");
  gen_cmd->add_option("--d", gen_flags.d, "Petals (sunflower)");
  gen_cmd->add_option("--s", gen_flags.s, "Overlap (s-path) or cycle length (hypercycle)");
  gen_cmd->add_option("--len", gen_flags.len, "Number of edges (s-path, loose-path)");
  gen_cmd->add_option("-o,--output", gen_flags.output, "Output file (default stdout)");

  BenchFlags bench_flags;
  bench_flags.solver.strategy = "min-degree";
  auto* bench_cmd = app.add_subcommand("bench", "Tabulate two-path or kn-minus instances as CSV");
  bench_cmd->add_option("name", bench_flags.name, "two-path or kn-minus")
      ->required()
      ->check(CLI::IsMember({"two-path", "kn-minus"}));
  bench_cmd->add_option("--n-list", bench_flags.n_list, "Comma separated vertex counts")->delimiter(',');
  bench_cmd->add_option("-o,--output", bench_flags.output, "CSV file (default stdout)");
  bench_flags.solver.attach(bench_cmd);

  OracleFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run a reference oracle and compare with compute");
  oracle_cmd->require_subcommand(1);
  auto* grid_cmd = oracle_cmd->add_subcommand("grid", "Simplex grid search for alpha or alpha_j");
  grid_cmd->add_option("--input,-i", oracle_flags.input, "Hypergraph file")->required();
  grid_cmd->add_option("--vertex", oracle_flags.vertex, "1-based vertex j (0: minimum over all)")
      ->capture_default_str();
  grid_cmd->add_option("--depth", oracle_flags.depth, "Grid subdivisions")->capture_default_str();
  grid_cmd->add_option("--refine", oracle_flags.refine, "Local refinement rounds")->capture_default_str();
  grid_cmd->add_option("--tol", oracle_flags.tol, "Agreement tolerance")->capture_default_str();
  oracle_flags.solver.attach(grid_cmd);
  auto* beta_cmd = oracle_cmd->add_subcommand("beta", "Quartic chain minimum governing 2-path 4-graphs");
  beta_cmd->add_option("--l", oracle_flags.l, "Even chain length in [4, 40]")->capture_default_str();
  oracle_flags.solver.attach(beta_cmd, false);
  auto* cut_cmd = oracle_cmd->add_subcommand("edge-cut", "Edge connectivity by enumeration (m <= 20)");
  cut_cmd->add_option("--input,-i", oracle_flags.input, "Hypergraph file")->required();
  oracle_flags.solver.attach(cut_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute_cmd) return run_compute(compute_flags);
    if (*gen_cmd) return run_gen(gen_flags);
    if (*bench_cmd) return run_bench(bench_flags);
    if (*grid_cmd) return run_oracle_grid(oracle_flags);
    if (*beta_cmd) return run_oracle_beta(oracle_flags);
    if (*cut_cmd) return run_oracle_edge_cut(oracle_flags);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
