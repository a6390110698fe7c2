#include "hypercon/hypercon.h"

#include <chrono>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "core/ftr.hpp"
#include "core/hypergraph.hpp"
#include "core/oracle.hpp"
#include "core/reduction.hpp"
#include "core/report.hpp"

#ifndef HYPERCON_VERSION
#define HYPERCON_VERSION "0.0.0"
#endif

struct hc_hypergraph {
  hypercon::Hypergraph graph;
  std::string source;
  double parse_seconds = 0.0;
};

struct hc_result {
  hypercon::RunReport report;
};

namespace {

thread_local std::string last_error;

hc_status fail(hc_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

// Maps the exception in flight to a status code.
hc_status translate_exception() {
  try {
    throw;
  } catch (const hypercon::ParseError& e) {
    return fail(HC_ERR_PARSE, e.what());
  } catch (const hypercon::IoError& e) {
    return fail(HC_ERR_IO, e.what());
  } catch (const hypercon::SolverError& e) {
    return fail(HC_ERR_SOLVER, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HC_ERR_INTERNAL, "unknown error");
  }
}

template <class F>
hc_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (...) {
    return translate_exception();
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hypercon::FTRConfig to_core(const hc_config& c) {
  hypercon::FTRConfig cfg;
  cfg.sigma0 = c.sigma0;
  cfg.sigma1 = c.sigma1;
  cfg.sigma2 = c.sigma2;
  cfg.eps = c.eps;
  cfg.delta0 = c.delta0;
  cfg.delta_max = c.delta_max;
  cfg.max_outer_iter = c.max_outer_iter;
  cfg.restarts = c.restarts;
  cfg.seed = c.seed;
  cfg.qp_tol = c.qp_tol;
  cfg.qp_max_iter = c.qp_max_iter;
  cfg.stop_norm = c.stop_norm == HC_STOP_EUCLID ? hypercon::StopNorm::euclid : hypercon::StopNorm::inf;
  cfg.lambda_rule = c.lambda_rule == HC_LAMBDA_ADJACENCY ? hypercon::LambdaRule::adjacency : hypercon::LambdaRule::gradient;
  cfg.threads = c.threads;
  return cfg;
}

hypercon::Strategy to_core(hc_strategy s) {
  switch (s) {
    case HC_STRATEGY_ALL: return hypercon::Strategy::all;
    case HC_STRATEGY_DOMINANCE: return hypercon::Strategy::dominance;
    case HC_STRATEGY_MIN_DEGREE: return hypercon::Strategy::min_degree;
  }
  throw std::invalid_argument("unknown strategy");
}

hypercon::GraphClass to_core(hc_graph_class c) {
  switch (c) {
    case HC_CLASS_SUNFLOWER: return hypercon::GraphClass::sunflower;
    case HC_CLASS_HYPERCYCLE: return hypercon::GraphClass::hypercycle;
    case HC_CLASS_SQUID: return hypercon::GraphClass::squid;
    case HC_CLASS_S_PATH: return hypercon::GraphClass::s_path;
    case HC_CLASS_LOOSE_PATH: return hypercon::GraphClass::loose_path;
    case HC_CLASS_COMPLETE: return hypercon::GraphClass::complete;
    case HC_CLASS_COMPLETE_MINUS: return hypercon::GraphClass::complete_minus;
  }
  throw std::invalid_argument("unknown hypergraph class");
}

hc_graph_class from_core(hypercon::GraphClass c) {
  switch (c) {
    case hypercon::GraphClass::sunflower: return HC_CLASS_SUNFLOWER;
    case hypercon::GraphClass::hypercycle: return HC_CLASS_HYPERCYCLE;
    case hypercon::GraphClass::squid: return HC_CLASS_SQUID;
    case hypercon::GraphClass::s_path: return HC_CLASS_S_PATH;
    case hypercon::GraphClass::loose_path: return HC_CLASS_LOOSE_PATH;
    case hypercon::GraphClass::complete: return HC_CLASS_COMPLETE;
    case hypercon::GraphClass::complete_minus: return HC_CLASS_COMPLETE_MINUS;
  }
  return HC_CLASS_COMPLETE;
}

hc_run_status from_core(hypercon::RunStatus s) {
  switch (s) {
    case hypercon::RunStatus::converged: return HC_RUN_CONVERGED;
    case hypercon::RunStatus::iter_cap: return HC_RUN_ITER_CAP;
    case hypercon::RunStatus::stalled: return HC_RUN_STALLED;
  }
  return HC_RUN_ITER_CAP;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

extern "C" {

const char* hc_version(void) { return HYPERCON_VERSION; }

const char* hc_last_error(void) { return last_error.c_str(); }

void hc_string_free(char* s) { delete[] s; }

void hc_config_default(hc_config* cfg) {
  if (!cfg) return;
  const hypercon::FTRConfig d;
  cfg->sigma0 = d.sigma0;
  cfg->sigma1 = d.sigma1;
  cfg->sigma2 = d.sigma2;
  cfg->eps = d.eps;
  cfg->delta0 = d.delta0;
  cfg->delta_max = d.delta_max;
  cfg->max_outer_iter = d.max_outer_iter;
  cfg->restarts = d.restarts;
  cfg->seed = d.seed;
  cfg->qp_tol = d.qp_tol;
  cfg->qp_max_iter = d.qp_max_iter;
  cfg->stop_norm = HC_STOP_INF;
  cfg->lambda_rule = HC_LAMBDA_GRADIENT;
  cfg->threads = d.threads;
  cfg->strategy = HC_STRATEGY_DOMINANCE;
}

hc_status hc_hypergraph_parse(const char* text, size_t length, hc_hypergraph** out) {
  return guarded([&] {
    if (!text || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    const auto start = std::chrono::steady_clock::now();
    auto g = hypercon::parse_hypergraph(std::string_view(text, length));
    *out = new hc_hypergraph{std::move(g), "<memory>", seconds_since(start)};
    return HC_OK;
  });
}

hc_status hc_hypergraph_read_file(const char* path, hc_hypergraph** out) {
  return guarded([&] {
    if (!path || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    const auto start = std::chrono::steady_clock::now();
    auto g = hypercon::read_hypergraph_file(path);
    *out = new hc_hypergraph{std::move(g), path, seconds_since(start)};
    return HC_OK;
  });
}

hc_status hc_hypergraph_generate(const hc_generator* spec, hc_hypergraph** out) {
  return guarded([&] {
    if (!spec || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    hypercon::GeneratorSpec s;
    s.kind = to_core(spec->kind);
    s.k = spec->k;
    s.n = spec->n;
    s.petals = spec->petals;
    s.cycle_length = spec->cycle_length;
    s.overlap = spec->overlap;
    s.length = spec->length;
    auto g = hypercon::generate(s);
    *out = new hc_hypergraph{std::move(g), std::string("generated:") + hypercon::to_string(s.kind), 0.0};
    return HC_OK;
  });
}

hc_status hc_hypergraph_from_edges(int n, int k, int m, const int* edges, hc_hypergraph** out) {
  return guarded([&] {
    if (!out || (m > 0 && !edges) || m < 0) return fail(HC_ERR_INVALID_ARGUMENT, "null or negative argument");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      rows[e].resize(static_cast<std::size_t>(k));
      for (int t = 0; t < k; ++t) rows[e][t] = edges[static_cast<std::size_t>(e) * k + t] - 1;
    }
    *out = new hc_hypergraph{hypercon::Hypergraph(n, k, std::move(rows)), "<edges>", 0.0};
    return HC_OK;
  });
}

hc_status hc_hypergraph_write(const hc_hypergraph* h, char** text) {
  return guarded([&] {
    if (!h || !text) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    *text = copy_string(hypercon::write_hypergraph(h->graph));
    return HC_OK;
  });
}

hc_status hc_hypergraph_write_file(const hc_hypergraph* h, const char* path) {
  return guarded([&] {
    if (!h || !path) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    hypercon::write_hypergraph_file(h->graph, path);
    return HC_OK;
  });
}

void hc_hypergraph_free(hc_hypergraph* h) { delete h; }

int hc_hypergraph_n(const hc_hypergraph* h) { return h ? h->graph.n() : 0; }
int hc_hypergraph_k(const hc_hypergraph* h) { return h ? h->graph.k() : 0; }
int hc_hypergraph_m(const hc_hypergraph* h) { return h ? h->graph.m() : 0; }
int hc_hypergraph_is_connected(const hc_hypergraph* h) { return h && hypercon::is_connected(h->graph) ? 1 : 0; }

int hc_hypergraph_degree(const hc_hypergraph* h, int vertex) {
  if (!h || vertex < 1 || vertex > h->graph.n()) return -1;
  return h->graph.degree(vertex - 1);
}

int hc_hypergraph_min_degree(const hc_hypergraph* h) { return h ? hypercon::degrees(h->graph).min_degree : -1; }

hc_status hc_parse_strategy(const char* name, hc_strategy* out) {
  return guarded([&] {
    if (!name || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    switch (hypercon::strategy_from_string(name)) {
      case hypercon::Strategy::all: *out = HC_STRATEGY_ALL; break;
      case hypercon::Strategy::dominance: *out = HC_STRATEGY_DOMINANCE; break;
      case hypercon::Strategy::min_degree: *out = HC_STRATEGY_MIN_DEGREE; break;
    }
    return HC_OK;
  });
}

hc_status hc_parse_graph_class(const char* name, hc_graph_class* out) {
  return guarded([&] {
    if (!name || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    *out = from_core(hypercon::graph_class_from_string(name));
    return HC_OK;
  });
}

hc_status hc_compute(const hc_hypergraph* h, const hc_config* cfg, hc_result** out) {
  return guarded([&] {
    if (!h || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    hc_config c;
    if (cfg) {
      c = *cfg;
    } else {
      hc_config_default(&c);
    }
    hypercon::RunReport report;
    report.version = HYPERCON_VERSION;
    report.input = h->source;
    report.n = h->graph.n();
    report.k = h->graph.k();
    report.m = h->graph.m();
    report.config = to_core(c);
    report.strategy = to_core(c.strategy);
    report.parse_seconds = h->parse_seconds;
    const auto start = std::chrono::steady_clock::now();
    report.result = hypercon::compute_alpha(h->graph, report.config, report.strategy);
    report.solve_seconds = seconds_since(start);
    *out = new hc_result{std::move(report)};
    return HC_OK;
  });
}

double hc_result_alpha(const hc_result* r) { return r ? r->report.result.alpha : 0.0; }

int hc_result_argmin(const hc_result* r) { return r ? r->report.result.argmin + 1 : 0; }

int hc_result_connected(const hc_result* r) { return r && r->report.result.connected ? 1 : 0; }

size_t hc_result_vertex_count(const hc_result* r) { return r ? r->report.result.per_vertex.size() : 0; }

hc_status hc_result_vertex(const hc_result* r, size_t index, hc_vertex_summary* out) {
  return guarded([&] {
    if (!r || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    const auto& res = r->report.result;
    if (index >= res.per_vertex.size()) return fail(HC_ERR_INVALID_ARGUMENT, "vertex index out of range");
    const auto& v = res.per_vertex[index];
    const auto& st = res.restart_stats[index];
    out->vertex = v.vertex + 1;
    out->alpha_j = v.alpha_j;
    out->hit_ratio = st.hit_ratio;
    out->mean_iterations = st.mean_iterations;
    out->mean_seconds = st.mean_seconds;
    out->kkt_residual = v.kkt_residual;
    out->face_min_eig = v.face_min_eig;
    out->status = from_core(v.status);
    out->converged_runs = st.converged_runs;
    out->runs = st.runs;
    return HC_OK;
  });
}

size_t hc_result_minimizer(const hc_result* r, double* x, size_t capacity) {
  if (!r) return 0;
  const auto& res = r->report.result;
  for (const auto& v : res.per_vertex) {
    if (v.vertex != res.argmin) continue;
    const auto n = static_cast<size_t>(v.x.size());
    if (x) {
      for (size_t i = 0; i < n && i < capacity; ++i) x[i] = v.x[static_cast<Eigen::Index>(i)];
    }
    return n;
  }
  return 0;
}

hc_status hc_result_to_json(const hc_result* r, int indent, char** json) {
  return guarded([&] {
    if (!r || !json) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    *json = copy_string(hypercon::report_to_json(r->report, indent));
    return HC_OK;
  });
}

void hc_result_free(hc_result* r) { delete r; }

hc_status hc_oracle_grid_alpha(const hc_hypergraph* h, int vertex, int depth, int refine_rounds, double* out) {
  return guarded([&] {
    if (!h || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    if (vertex < 0 || vertex > h->graph.n()) return fail(HC_ERR_INVALID_ARGUMENT, "vertex out of range");
    const hypercon::GridSpec spec{depth, refine_rounds};
    *out = vertex == 0 ? hypercon::grid_alpha(h->graph, spec) : hypercon::grid_alpha_j(h->graph, vertex - 1, spec);
    return HC_OK;
  });
}

hc_status hc_oracle_beta_two_path(int l, const hc_config* cfg, double* out) {
  return guarded([&] {
    if (!out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    hc_config c;
    if (cfg) {
      c = *cfg;
    } else {
      hc_config_default(&c);
    }
    *out = hypercon::beta_two_path(l, to_core(c));
    return HC_OK;
  });
}

hc_status hc_oracle_edge_connectivity(const hc_hypergraph* h, int* out) {
  return guarded([&] {
    if (!h || !out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    *out = hypercon::edge_connectivity_small(h->graph);
    return HC_OK;
  });
}

hc_status hc_oracle_upper_bound_vertex_cut(int n, int k, int v, double* out) {
  return guarded([&] {
    if (!out) return fail(HC_ERR_INVALID_ARGUMENT, "null argument");
    *out = hypercon::upper_bound_vertex_cut(n, k, v);
    return HC_OK;
  });
}

}  // extern "C"
