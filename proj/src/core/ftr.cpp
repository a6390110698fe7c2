#include "core/ftr.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/Householder>
#include <Eigen/QR>

#include "core/subproblem.hpp"

namespace hypercon {

namespace {

constexpr double kActiveTol = 1e-8;
constexpr double kCertifyTol = 1e-6;
constexpr double kRadiusFloor = 1e-14;
constexpr int kMaxFaceDimension = 2000;

double norm_k(const Eigen::VectorXd& x, int k) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += ipow(std::abs(x[i]), k);
  return std::pow(s, 1.0 / k);
}

double current_lambda(const HomogeneousForm& form, const Eigen::VectorXd& x, LambdaRule rule) {
  return rule == LambdaRule::gradient ? form.value(x) : form.adjacency_value(x);
}

// Per-task output for the multistart pool.
struct TaskSlot {
  VertexResult run;
  std::exception_ptr error;
};

}  // namespace

void FTRConfig::validate() const {
  if (!(0.0 < sigma0 && sigma0 < sigma1 && sigma1 < sigma2 && sigma1 < 1.0)) {
    throw std::invalid_argument("sigma thresholds must satisfy 0 < sigma0 < sigma1 < sigma2, sigma1 < 1");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(delta0 > 0.0 && delta0 <= delta_max)) throw std::invalid_argument("need 0 < delta0 <= delta_max");
  if (max_outer_iter < 1) throw std::invalid_argument("max_outer_iter must be at least 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (!(qp_tol > 0.0)) throw std::invalid_argument("qp_tol must be positive");
  if (threads < 0) throw std::invalid_argument("threads must be nonnegative");
}

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYPERCON_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

PinnedPoint init_point(int n, int k, int j, std::uint64_t seed, int restart) {
  if (n < 1 || j < -1 || j >= n) throw std::invalid_argument("init_point: bad dimension or pinned index");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(j + 1), static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  PinnedPoint p;
  p.pinned = j;
  p.x = Eigen::VectorXd::Zero(n);
  for (;;) {
    for (int i = 0; i < n; ++i) {
      if (i != j) p.x[i] = std::abs(normal(rng));
    }
    if (p.x.maxCoeff() > 0.0) break;
  }
  p.x = project_sphere(p.x, k);
  return p;
}

Eigen::VectorXd project_sphere(const Eigen::VectorXd& x, int k) {
  const double nrm = norm_k(x, k);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::invalid_argument("project_sphere: zero or non-finite input");
  return x / nrm;
}

double multiplier(const Hypergraph& h, const Eigen::VectorXd& x) { return lap_value(h, x); }

KKTCertificate kkt_certificate(const HomogeneousForm& form, std::span<const int> free, const Eigen::VectorXd& x,
                               double lambda) {
  const int k = form.degree();
  KKTCertificate cert;
  const LagrangianParts parts = lagrangian_parts(form, x, free, lambda);
  const int r = static_cast<int>(free.size());

  double residual = 0.0;
  for (int t = 0; t < r; ++t) residual = std::max(residual, std::abs(std::min(x[free[t]], parts.g[t])));
  double sphere = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sphere += ipow(x[i], k);
  residual = std::max(residual, std::abs(sphere - 1.0));
  // grad f'x = T x^{k-1} . x = T x^k by homogeneity.
  residual = std::max(residual, std::abs(lambda - form.value(x)));
  cert.first_order = residual;

  std::vector<int> face;
  for (int t = 0; t < r; ++t) {
    const bool strongly_active = x[free[t]] <= kActiveTol && parts.g[t] > kActiveTol;
    if (!strongly_active) face.push_back(t);
  }
  const int s = static_cast<int>(face.size());
  cert.face_dimension = s;
  if (s > kMaxFaceDimension) return cert;
  cert.second_order_checked = true;
  if (s == 0) return cert;

  const Eigen::MatrixXd W = parts.W.to_dense();
  Eigen::MatrixXd Wf(s, s);
  Eigen::VectorXd af(s);
  for (int u = 0; u < s; ++u) {
    af[u] = ipow(x[free[face[u]]], k - 1);
    for (int v = 0; v < s; ++v) Wf(u, v) = W(face[u], face[v]);
  }
  Eigen::MatrixXd Z;
  if (af.norm() > 0.0) {
    if (s == 1) {
      cert.face_min_eig = 0.0;
      cert.face_dimension = 0;
      return cert;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(af);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(s, s);
    Z = Q.rightCols(s - 1);
  } else {
    Z = Eigen::MatrixXd::Identity(s, s);
  }
  const Eigen::MatrixXd M = Z.transpose() * Wf * Z;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  cert.face_min_eig = eig.eigenvalues()[0];
  cert.face_dimension = static_cast<int>(Z.cols());
  return cert;
}

KKTCertificate kkt_certificate(const Hypergraph& h, int j, const Eigen::VectorXd& x, double lambda) {
  LaplacianForm form(h);
  const auto free = free_coordinates(h.n(), j);
  return kkt_certificate(form, free, x, lambda);
}

VertexResult ftr_solve(const HomogeneousForm& form, std::span<const int> free, const Eigen::VectorXd& x0,
                       const FTRConfig& cfg, SolverTrace* trace) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int k = form.degree();
  const int r = static_cast<int>(free.size());
  if (x0.size() != form.dimension()) throw std::invalid_argument("ftr_solve: start point has wrong dimension");

  Eigen::VectorXd x = x0;
  double f = form.value(x) / k;
  double lambda = current_lambda(form, x, cfg.lambda_rule);
  double radius = cfg.delta0;

  VertexResult out;
  out.status = RunStatus::iter_cap;
  Eigen::VectorXd xr(r), y;
  int t = 0;
  for (; t < cfg.max_outer_iter; ++t) {
    LagrangianParts parts = lagrangian_parts(form, x, free, lambda);
    for (int i = 0; i < r; ++i) xr[i] = x[free[i]];
    Eigen::VectorXd a(r);
    for (int i = 0; i < r; ++i) a[i] = ipow(xr[i], k - 1);
    const TRSubproblem sub = make_tr_subproblem(std::move(parts.g), std::move(parts.W), std::move(a), xr, radius);
    const StepResult step = solve_tr_qp(sub, cfg.qp_tol, cfg.qp_max_iter);

    const double step_norm = cfg.stop_norm == StopNorm::inf ? step.d.lpNorm<Eigen::Infinity>() : step.d.norm();
    IterationRecord rec;
    rec.t = t;
    rec.f = f;
    rec.lambda = lambda;
    rec.radius = radius;
    rec.step_norm = step_norm;
    if (step_norm <= cfg.eps) {
      if (trace) trace->records.push_back(rec);
      out.status = RunStatus::converged;
      break;
    }

    const double predicted = step.model_decrease;
    double rho = -std::numeric_limits<double>::infinity();
    double f_trial = f;
    bool have_trial = false;
    if (predicted > 0.0) {
      y = x;
      for (int i = 0; i < r; ++i) y[free[i]] = std::max(0.0, xr[i] + step.d[i]);
      const double nrm = norm_k(y, k);
      if (nrm > 0.0) {
        y /= nrm;
        f_trial = form.value(y) / k;
        have_trial = true;
        const double actual = f - f_trial;
        // Model and objective agreeing to rounding counts as a perfect fit.
        if (std::abs(actual - predicted) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f))) {
          rho = 1.0;
        } else {
          rho = actual / predicted;
        }
      }
    }
    rec.rho = rho;

    const double old_radius = radius;
    if (rho <= cfg.sigma1) {
      radius = 0.5 * radius;
    } else if (rho > cfg.sigma2) {
      radius = std::min(cfg.delta_max, 2.0 * radius);
    }
    rec.accepted = have_trial && rho >= cfg.sigma0;
    if (trace) trace->records.push_back(rec);

    if (rec.accepted) {
      x = y;
      f = f_trial;
      lambda = current_lambda(form, x, cfg.lambda_rule);
    } else if (old_radius <= kRadiusFloor) {
      const KKTCertificate c = kkt_certificate(form, free, x, form.value(x));
      out.status = c.first_order <= kCertifyTol ? RunStatus::converged : RunStatus::stalled;
      ++t;
      break;
    }
  }

  out.x = x;
  out.alpha_j = form.value(x);
  out.iterations = t;
  const KKTCertificate cert = kkt_certificate(form, free, x, out.alpha_j);
  out.kkt_residual = cert.first_order;
  out.face_min_eig = cert.face_min_eig;
  out.second_order_checked = cert.second_order_checked;
  if (out.status == RunStatus::converged && cert.first_order > kCertifyTol) out.status = RunStatus::stalled;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

VertexResult ftr_solve_vertex(const Hypergraph& h, int j, const PinnedPoint& x0, const FTRConfig& cfg,
                              SolverTrace* trace) {
  if (j < 0 || j >= h.n()) throw std::invalid_argument("ftr_solve_vertex: vertex out of range");
  if (x0.x.size() != h.n() || x0.x[j] != 0.0) throw std::invalid_argument("ftr_solve_vertex: start must vanish at j");
  LaplacianForm form(h);
  const auto free = free_coordinates(h.n(), j);
  VertexResult out = ftr_solve(form, free, x0.x, cfg, trace);
  out.vertex = j;
  return out;
}

namespace {

std::vector<MultistartResult> run_pool(const HomogeneousForm& form, const std::vector<int>& pinned,
                                       const FTRConfig& cfg) {
  cfg.validate();
  const int n = form.dimension();
  const int k = form.degree();
  const int restarts = cfg.restarts;
  const std::size_t tasks = pinned.size() * static_cast<std::size_t>(restarts);
  std::vector<TaskSlot> slots(tasks);
  std::vector<std::vector<int>> free_sets;
  free_sets.reserve(pinned.size());
  for (int j : pinned) free_sets.push_back(free_coordinates(n, j));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t c = task / restarts;
      const int restart = static_cast<int>(task % restarts);
      try {
        const PinnedPoint x0 = init_point(n, k, pinned[c], cfg.seed, restart);
        slots[task].run = ftr_solve(form, free_sets[c], x0.x, cfg);
        slots[task].run.vertex = pinned[c];
      } catch (...) {
        slots[task].error = std::current_exception();
      }
    }
  };
  const int threads = std::min<std::size_t>(static_cast<std::size_t>(resolve_thread_count(cfg.threads)), tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<MultistartResult> results(pinned.size());
  for (std::size_t c = 0; c < pinned.size(); ++c) {
    MultistartResult& res = results[c];
    RestartStats& st = res.stats;
    st.vertex = pinned[c];
    st.runs = restarts;
    int best_index = -1;
    double iters = 0.0, secs = 0.0;
    for (int rr = 0; rr < restarts; ++rr) {
      const TaskSlot& slot = slots[c * restarts + rr];
      if (slot.error) std::rethrow_exception(slot.error);
      iters += slot.run.iterations;
      secs += slot.run.seconds;
      if (slot.run.status != RunStatus::converged) continue;
      ++st.converged_runs;
      // Strict comparison keeps the earliest restart among equal values.
      if (best_index < 0 || slot.run.alpha_j < slots[c * restarts + best_index].run.alpha_j) best_index = rr;
    }
    st.mean_iterations = iters / restarts;
    st.mean_seconds = secs / restarts;
    if (best_index < 0) continue;
    res.best = slots[c * restarts + best_index].run;
    st.best = res.best.alpha_j;
    const double tol = 1e-6 * std::max(std::abs(st.best), 1e-12);
    int hits = 0;
    for (int rr = 0; rr < restarts; ++rr) {
      const VertexResult& run = slots[c * restarts + rr].run;
      if (run.status == RunStatus::converged && std::abs(run.alpha_j - st.best) <= tol) ++hits;
    }
    st.hit_ratio = static_cast<double>(hits) / restarts;
  }
  return results;
}

}  // namespace

MultistartResult multistart(const HomogeneousForm& form, int pinned, const FTRConfig& cfg) {
  auto results = run_pool(form, {pinned}, cfg);
  if (results[0].stats.converged_runs == 0) throw SolverError("no restart converged");
  return results[0];
}

ConnectivityResult compute_alpha(const Hypergraph& h, const FTRConfig& cfg, Strategy strategy) {
  cfg.validate();
  ConnectivityResult out;
  out.strategy = strategy;
  out.connected = is_connected(h);
  if (!out.connected) return out;

  const CandidateSet cands = candidate_vertices(h, strategy);
  LaplacianForm form(h);
  auto results = run_pool(form, cands.vertices, cfg);
  for (const auto& res : results) {
    if (res.stats.converged_runs == 0) {
      throw SolverError("no restart converged for vertex " + std::to_string(res.stats.vertex + 1));
    }
  }
  out.alpha = std::numeric_limits<double>::infinity();
  for (auto& res : results) {
    // Candidates are ascending, so strict comparison breaks ties toward the smallest j.
    if (res.best.alpha_j < out.alpha) {
      out.alpha = res.best.alpha_j;
      out.argmin = res.best.vertex;
    }
    out.per_vertex.push_back(std::move(res.best));
    out.restart_stats.push_back(res.stats);
  }
  return out;
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "converged";
    case RunStatus::iter_cap: return "iter_cap";
    case RunStatus::stalled: return "stalled";
  }
  return "unknown";
}

const char* to_string(StopNorm s) { return s == StopNorm::inf ? "inf" : "euclid"; }

const char* to_string(LambdaRule r) { return r == LambdaRule::gradient ? "gradient" : "adjacency"; }

StopNorm stop_norm_from_string(std::string_view name) {
  if (name == "inf") return StopNorm::inf;
  if (name == "euclid") return StopNorm::euclid;
  throw std::invalid_argument("unknown stop norm '" + std::string(name) + "'");
}

LambdaRule lambda_rule_from_string(std::string_view name) {
  if (name == "gradient") return LambdaRule::gradient;
  if (name == "adjacency") return LambdaRule::adjacency;
  throw std::invalid_argument("unknown lambda rule '" + std::string(name) + "'");
}

}  // namespace hypercon
