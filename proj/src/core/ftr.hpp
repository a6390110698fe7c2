#ifndef HYPERCON_CORE_FTR_HPP
#define HYPERCON_CORE_FTR_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "core/hypergraph.hpp"
#include "core/reduction.hpp"
#include "core/tensor.hpp"

namespace hypercon {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StopNorm { inf, euclid };
enum class LambdaRule { gradient, adjacency };

struct FTRConfig {
  double sigma0 = 0.25;
  double sigma1 = 0.5;
  double sigma2 = 0.75;
  double eps = 1e-8;
  double delta0 = 2.0;
  double delta_max = 10.0;
  int max_outer_iter = 10000;
  int restarts = 100;
  std::uint64_t seed = 0;
  double qp_tol = 1e-10;
  int qp_max_iter = 0;  ///< 0 selects 50 * dimension
  StopNorm stop_norm = StopNorm::inf;
  LambdaRule lambda_rule = LambdaRule::gradient;
  int threads = 0;  ///< 0: HYPERCON_THREADS if set, else hardware concurrency

  /// Throws std::invalid_argument on a violated parameter constraint.
  void validate() const;
};

struct IterationRecord {
  int t = 0;
  double f = 0.0;
  double lambda = 0.0;
  double radius = 0.0;
  double rho = 0.0;
  double step_norm = 0.0;
  bool accepted = false;
};

struct SolverTrace {
  std::vector<IterationRecord> records;
};

/// converged: stopped on the step-norm test with a first-order certificate.
/// stalled: the step norm fell below eps but the certificate failed.
enum class RunStatus { converged, iter_cap, stalled };

struct VertexResult {
  int vertex = -1;  ///< 0-based pinned vertex, -1 for an unpinned run
  double alpha_j = 0.0;
  Eigen::VectorXd x;
  int iterations = 0;
  RunStatus status = RunStatus::iter_cap;
  double kkt_residual = 0.0;
  double face_min_eig = 0.0;
  bool second_order_checked = false;
  double seconds = 0.0;
};

struct RestartStats {
  int vertex = -1;
  double best = 0.0;
  double hit_ratio = 0.0;  ///< share of all runs within 1e-6 (relative) of best
  double mean_iterations = 0.0;
  double mean_seconds = 0.0;
  int converged_runs = 0;
  int runs = 0;
};

struct ConnectivityResult {
  double alpha = 0.0;
  int argmin = -1;  ///< 0-based; -1 when disconnected
  bool connected = false;
  Strategy strategy = Strategy::dominance;
  std::vector<VertexResult> per_vertex;  ///< best run per candidate, candidate order
  std::vector<RestartStats> restart_stats;
};

struct KKTCertificate {
  double first_order = 0.0;
  double face_min_eig = 0.0;
  bool second_order_checked = false;
  int face_dimension = 0;
};

/// Random start keyed by (seed, j, restart): absolute standard normals on the
/// coordinates other than j, projected to the k-norm sphere. j = -1 leaves
/// every coordinate free.
PinnedPoint init_point(int n, int k, int j, std::uint64_t seed, int restart);

/// x / ||x||_k. Throws std::invalid_argument if x is zero.
Eigen::VectorXd project_sphere(const Eigen::VectorXd& x, int k);

/// lambda = grad f(x)'x, which equals T x^k.
double multiplier(const Hypergraph& h, const Eigen::VectorXd& x);

/// Feasible trust-region iteration for min T x^k on the nonnegative k-norm
/// sphere restricted to `free` (other coordinates of x0 must be zero).
VertexResult ftr_solve(const HomogeneousForm& form, std::span<const int> free,
                       const Eigen::VectorXd& x0, const FTRConfig& cfg, SolverTrace* trace = nullptr);

VertexResult ftr_solve_vertex(const Hypergraph& h, int j, const PinnedPoint& x0, const FTRConfig& cfg,
                              SolverTrace* trace = nullptr);

/// First-order residual max(||min(x, g)||_inf, |sum x^k - 1|, |lambda - grad f'x|)
/// and the smallest eigenvalue of W on the critical face.
KKTCertificate kkt_certificate(const HomogeneousForm& form, std::span<const int> free,
                               const Eigen::VectorXd& x, double lambda);
KKTCertificate kkt_certificate(const Hypergraph& h, int j, const Eigen::VectorXd& x, double lambda);

/// Best run of `restarts` seeded runs of ftr_solve for one pinned coordinate
/// (or none with pinned = -1). Work is spread over cfg-selected threads; the
/// result does not depend on the thread count.
struct MultistartResult {
  VertexResult best;
  RestartStats stats;
};
MultistartResult multistart(const HomogeneousForm& form, int pinned, const FTRConfig& cfg);

/// alpha(G) over the candidate vertices. Disconnected inputs return alpha = 0
/// without running the solver. Throws SolverError if some candidate has no
/// converged run.
ConnectivityResult compute_alpha(const Hypergraph& h, const FTRConfig& cfg, Strategy strategy);

int resolve_thread_count(int requested);

const char* to_string(RunStatus s);
const char* to_string(StopNorm s);
const char* to_string(LambdaRule r);
StopNorm stop_norm_from_string(std::string_view name);
LambdaRule lambda_rule_from_string(std::string_view name);

}  // namespace hypercon

#endif  // HYPERCON_CORE_FTR_HPP
