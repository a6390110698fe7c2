#ifndef HYPERCON_HYPERCON_H
#define HYPERCON_HYPERCON_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HYPERCON_BUILDING_LIBRARY)
#    define HYPERCON_API __declspec(dllexport)
#  else
#    define HYPERCON_API __declspec(dllimport)
#  endif
#else
#  define HYPERCON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Analytic connectivity of k-uniform hypergraphs.
 *
 * All functions returning hc_status leave a thread-local message readable
 * through hc_last_error() when they fail. Vertex indices crossing this
 * interface are 1-based, like the text file format. Strings handed out by
 * the library are released with hc_string_free.
 */

typedef enum hc_status {
  HC_OK = 0,
  HC_ERR_PARSE = 1,
  HC_ERR_INVALID_ARGUMENT = 2,
  HC_ERR_SOLVER = 3,
  HC_ERR_IO = 4,
  HC_ERR_INTERNAL = 5
} hc_status;

typedef enum hc_strategy {
  HC_STRATEGY_ALL = 0,
  HC_STRATEGY_DOMINANCE = 1,
  HC_STRATEGY_MIN_DEGREE = 2
} hc_strategy;

typedef enum hc_lambda_rule { HC_LAMBDA_GRADIENT = 0, HC_LAMBDA_ADJACENCY = 1 } hc_lambda_rule;

typedef enum hc_stop_norm { HC_STOP_INF = 0, HC_STOP_EUCLID = 1 } hc_stop_norm;

typedef enum hc_graph_class {
  HC_CLASS_SUNFLOWER = 0,
  HC_CLASS_HYPERCYCLE = 1,
  HC_CLASS_SQUID = 2,
  HC_CLASS_S_PATH = 3,
  HC_CLASS_LOOSE_PATH = 4,
  HC_CLASS_COMPLETE = 5,
  HC_CLASS_COMPLETE_MINUS = 6
} hc_graph_class;

typedef enum hc_run_status { HC_RUN_CONVERGED = 0, HC_RUN_ITER_CAP = 1, HC_RUN_STALLED = 2 } hc_run_status;

typedef struct hc_hypergraph hc_hypergraph;
typedef struct hc_result hc_result;

typedef struct hc_config {
  double sigma0;
  double sigma1;
  double sigma2;
  double eps;
  double delta0;
  double delta_max;
  int max_outer_iter;
  int restarts;
  uint64_t seed;
  double qp_tol;
  int qp_max_iter; /* 0: 50 * dimension */
  hc_stop_norm stop_norm;
  hc_lambda_rule lambda_rule;
  int threads; /* 0: HYPERCON_THREADS or hardware concurrency */
  hc_strategy strategy;
} hc_config;

/* Fields a class does not use are ignored. */
typedef struct hc_generator {
  hc_graph_class kind;
  int k;
  int n;            /* complete, complete-minus */
  int petals;       /* sunflower */
  int cycle_length; /* hypercycle */
  int overlap;      /* s-path */
  int length;       /* s-path, loose-path */
} hc_generator;

typedef struct hc_vertex_summary {
  int vertex; /* 1-based */
  double alpha_j;
  double hit_ratio;
  double mean_iterations;
  double mean_seconds;
  double kkt_residual;
  double face_min_eig;
  hc_run_status status;
  int converged_runs;
  int runs;
} hc_vertex_summary;

HYPERCON_API const char* hc_version(void);
HYPERCON_API const char* hc_last_error(void);
HYPERCON_API void hc_string_free(char* s);

HYPERCON_API void hc_config_default(hc_config* cfg);

HYPERCON_API hc_status hc_hypergraph_parse(const char* text, size_t length, hc_hypergraph** out);
HYPERCON_API hc_status hc_hypergraph_read_file(const char* path, hc_hypergraph** out);
HYPERCON_API hc_status hc_hypergraph_generate(const hc_generator* spec, hc_hypergraph** out);
/* Builds from m rows of k 1-based indices. */
HYPERCON_API hc_status hc_hypergraph_from_edges(int n, int k, int m, const int* edges, hc_hypergraph** out);
HYPERCON_API hc_status hc_hypergraph_write(const hc_hypergraph* h, char** text);
HYPERCON_API hc_status hc_hypergraph_write_file(const hc_hypergraph* h, const char* path);
HYPERCON_API void hc_hypergraph_free(hc_hypergraph* h);

HYPERCON_API int hc_hypergraph_n(const hc_hypergraph* h);
HYPERCON_API int hc_hypergraph_k(const hc_hypergraph* h);
HYPERCON_API int hc_hypergraph_m(const hc_hypergraph* h);
HYPERCON_API int hc_hypergraph_is_connected(const hc_hypergraph* h);
/* Returns -1 for an out-of-range vertex. */
HYPERCON_API int hc_hypergraph_degree(const hc_hypergraph* h, int vertex);
HYPERCON_API int hc_hypergraph_min_degree(const hc_hypergraph* h);

HYPERCON_API hc_status hc_parse_strategy(const char* name, hc_strategy* out);
HYPERCON_API hc_status hc_parse_graph_class(const char* name, hc_graph_class* out);

/* Disconnected inputs succeed with alpha 0 and no solver runs.
 * HC_ERR_SOLVER means some candidate vertex had no converged restart. */
HYPERCON_API hc_status hc_compute(const hc_hypergraph* h, const hc_config* cfg, hc_result** out);

HYPERCON_API double hc_result_alpha(const hc_result* r);
HYPERCON_API int hc_result_argmin(const hc_result* r); /* 0 when disconnected */
HYPERCON_API int hc_result_connected(const hc_result* r);
HYPERCON_API size_t hc_result_vertex_count(const hc_result* r);
HYPERCON_API hc_status hc_result_vertex(const hc_result* r, size_t index, hc_vertex_summary* out);
/* Copies the argmin minimizer (n values) into x; x may be NULL to query n. */
HYPERCON_API size_t hc_result_minimizer(const hc_result* r, double* x, size_t capacity);
HYPERCON_API hc_status hc_result_to_json(const hc_result* r, int indent, char** json);
HYPERCON_API void hc_result_free(hc_result* r);

/* vertex = 0 takes the minimum over all vertices. */
HYPERCON_API hc_status hc_oracle_grid_alpha(const hc_hypergraph* h, int vertex, int depth, int refine_rounds,
                                            double* out);
HYPERCON_API hc_status hc_oracle_beta_two_path(int l, const hc_config* cfg, double* out);
HYPERCON_API hc_status hc_oracle_edge_connectivity(const hc_hypergraph* h, int* out);
HYPERCON_API hc_status hc_oracle_upper_bound_vertex_cut(int n, int k, int v, double* out);

#ifdef __cplusplus
}
#endif

#endif /* HYPERCON_HYPERCON_H */
