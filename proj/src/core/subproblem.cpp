#include "core/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace hypercon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Projection {
  Eigen::VectorXd d;
  double multiplier = 0.0;
};

// Projection of z onto {a'd = 0} and the box [lo, hi]; d(mu) = clip(z - mu a)
// and a'd(mu) is nonincreasing in mu, so the root is bracketed by the sorted
// clipping breakpoints.
Projection project_with_multiplier(const Eigen::VectorXd& z, const Eigen::VectorXd& a,
                                   const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const Eigen::Index n = z.size();
  auto clipped = [&](double mu, Eigen::Index i) { return std::clamp(z[i] - mu * a[i], lo[i], hi[i]); };
  auto phi = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += a[i] * clipped(mu, i);
    return s;
  };

  std::vector<double> breakpoints;
  breakpoints.reserve(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] != 0.0) {
      breakpoints.push_back((z[i] - lo[i]) / a[i]);
      breakpoints.push_back((z[i] - hi[i]) / a[i]);
    }
  }
  Projection out;
  out.d.resize(n);
  if (breakpoints.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) out.d[i] = std::clamp(z[i], lo[i], hi[i]);
    return out;
  }
  std::sort(breakpoints.begin(), breakpoints.end());

  std::size_t left = 0, right = breakpoints.size() - 1;
  double phi_left = phi(breakpoints[left]);
  double phi_right = phi(breakpoints[right]);
  while (right - left > 1) {
    const std::size_t mid = left + (right - left) / 2;
    const double v = phi(breakpoints[mid]);
    if (v >= 0.0) {
      left = mid;
      phi_left = v;
    } else {
      right = mid;
      phi_right = v;
    }
  }
  double mu = breakpoints[left];
  if (phi_left > 0.0 && phi_left > phi_right) {
    mu = breakpoints[left] + phi_left * (breakpoints[right] - breakpoints[left]) / (phi_left - phi_right);
  }
  for (Eigen::Index i = 0; i < n; ++i) out.d[i] = clipped(mu, i);

  // One correction on the strictly interior coordinates removes the rounding
  // left in a'd by the interpolation.
  double residual = a.dot(out.d);
  double weight = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.d[i] > lo[i] && out.d[i] < hi[i]) weight += a[i] * a[i];
  }
  if (residual != 0.0 && weight > 0.0) {
    const double shift = residual / weight;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (out.d[i] > lo[i] && out.d[i] < hi[i]) {
        out.d[i] = std::clamp(out.d[i] - shift * a[i], lo[i], hi[i]);
      }
    }
    mu += shift;
  }
  out.multiplier = mu;
  return out;
}

enum BoundState : signed char { kAtLower = -1, kFree = 0, kAtUpper = 1 };

// Multiplier of a'd = 0 given bound states: least squares over the free
// coordinates, or, when none of them carries weight, the value that best
// satisfies the sign conditions of the fixed ones.
double equality_multiplier(const Eigen::VectorXd& r, const Eigen::VectorXd& a,
                           const std::vector<signed char>& state) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == kFree) {
      num += a[i] * r[i];
      den += a[i] * a[i];
    }
  }
  if (den > 0.0) return -num / den;

  double low = -kInf, high = kInf;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == kFree || a[i] == 0.0) continue;
    const double crossing = -r[i] / a[i];
    // Lower bound needs r + nu a >= 0, upper needs r + nu a <= 0.
    const bool need_above = (state[i] == kAtLower) == (a[i] > 0.0);
    if (need_above) {
      low = std::max(low, crossing);
    } else {
      high = std::min(high, crossing);
    }
  }
  if (low <= high) return std::clamp(0.0, low, high);
  return 0.5 * (low + high);
}

std::vector<signed char> bound_states(const TRSubproblem& sub, const Eigen::VectorXd& d) {
  std::vector<signed char> state(static_cast<std::size_t>(d.size()), kFree);
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] <= sub.lo[i]) {
      state[i] = kAtLower;
    } else if (d[i] >= sub.hi[i]) {
      state[i] = kAtUpper;
    }
  }
  return state;
}

}  // namespace

void TRSubproblem::validate() const {
  const Eigen::Index n = g.size();
  if (a.size() != n || lo.size() != n || hi.size() != n || W.dimension != n) {
    throw std::invalid_argument("trust-region subproblem: inconsistent dimensions");
  }
  if (!(radius > 0.0)) throw std::invalid_argument("trust-region subproblem: radius must be positive");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(lo[i] <= 0.0 && 0.0 <= hi[i])) {
      throw std::invalid_argument("trust-region subproblem: bounds must bracket zero");
    }
  }
}

TRSubproblem make_tr_subproblem(Eigen::VectorXd g, SparseSymMatrix W, Eigen::VectorXd a,
                                const Eigen::VectorXd& x, double radius) {
  TRSubproblem sub;
  sub.g = std::move(g);
  sub.W = std::move(W);
  sub.a = std::move(a);
  sub.radius = radius;
  sub.lo = (-x).cwiseMax(-radius);
  sub.hi = Eigen::VectorXd::Constant(x.size(), radius);
  return sub;
}

double model_value(const TRSubproblem& sub, const Eigen::VectorXd& d) {
  return sub.g.dot(d) + 0.5 * sub.W.quadratic_form(d);
}

Eigen::VectorXd project_feasible(const TRSubproblem& sub, const Eigen::VectorXd& z) {
  return project_with_multiplier(z, sub.a, sub.lo, sub.hi).d;
}

Eigen::VectorXd cauchy_point(const TRSubproblem& sub) {
  const Eigen::Index n = sub.dimension();
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  if (n == 0) return zero;

  Eigen::VectorXd dir = -sub.g;
  const double aa = sub.a.squaredNorm();
  if (aa > 0.0) dir += (sub.a.dot(sub.g) / aa) * sub.a;
  const double dir_max = dir.lpNorm<Eigen::Infinity>();
  if (dir_max == 0.0 || dir_max <= 1e-14 * sub.g.lpNorm<Eigen::Infinity>()) return zero;

  const double range = (sub.hi - sub.lo).maxCoeff();
  const double tau_scale = range / dir_max;
  auto project_at = [&](double tau) { return project_with_multiplier(tau * dir, sub.a, sub.lo, sub.hi); };

  double best_tau = 0.0, best_value = 0.0;
  auto consider = [&](double tau) {
    Eigen::VectorXd d = project_at(tau).d;
    const double v = model_value(sub, d);
    if (v < best_value) {
      best_value = v;
      best_tau = tau;
    }
  };

  // Walk the piecewise-linear path one linear piece at a time. Each piece's
  // direction and the multiplier slope are read off a probe just past its
  // start; the next kink is where some unclipped coordinate crosses a bound.
  double tau = 0.0;
  Projection here = project_at(0.0);
  const int max_pieces = 4 * static_cast<int>(n) + 16;
  for (int piece = 0; piece < max_pieces; ++piece) {
    const double h = 1e-9 * std::max(tau, tau_scale);
    Projection probe = project_at(tau + h);
    const Eigen::VectorXd v = (probe.d - here.d) / h;
    if (v.lpNorm<Eigen::Infinity>() <= 1e-12 * dir_max) break;
    const double mu_slope = (probe.multiplier - here.multiplier) / h;

    double t_next = kInf;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u0 = tau * dir[i] - here.multiplier * sub.a[i];
      const double du = dir[i] - mu_slope * sub.a[i];
      double t = kInf;
      const double di = probe.d[i];
      if (di > sub.lo[i] && di < sub.hi[i]) {
        if (du < 0.0) t = (sub.lo[i] - u0) / du;
        if (du > 0.0) t = (sub.hi[i] - u0) / du;
      } else if (di <= sub.lo[i] && du > 0.0) {
        t = (sub.lo[i] - u0) / du;
      } else if (di >= sub.hi[i] && du < 0.0) {
        t = (sub.hi[i] - u0) / du;
      }
      if (t > h) t_next = std::min(t_next, t);
    }

    const Eigen::VectorXd r = sub.g + sub.W.multiply(here.d);
    const double slope = r.dot(v);
    const double curvature = sub.W.quadratic_form(v);
    if (curvature > 0.0 && slope < 0.0) {
      const double t_star = -slope / curvature;
      if (t_star < t_next) consider(tau + t_star);
    }
    if (!std::isfinite(t_next)) break;
    tau += t_next;
    here = project_at(tau);
    consider(tau);
  }

  if (best_tau == 0.0) return zero;
  return project_at(best_tau).d;
}

double qp_kkt_residual(const TRSubproblem& sub, const Eigen::VectorXd& d) {
  const Eigen::VectorXd r = sub.g + sub.W.multiply(d);
  const auto state = bound_states(sub, d);
  const double nu = equality_multiplier(r, sub.a, state);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double rr = r[i] + nu * sub.a[i];
    const double res = std::min(d[i] - sub.lo[i], std::max(d[i] - sub.hi[i], rr));
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

namespace {

struct Tolerances {
  double mult = 0.0;   // multiplier sign tests
  double curv = 0.0;   // curvature treated as zero
  double step = 0.0;   // steps treated as zero
  double a_scale = 0.0;
};

struct ActiveSetRun {
  Eigen::VectorXd d;
  StepStatus status = StepStatus::iteration_cap;
  int iterations = 0;
};

// Primal active-set iteration from the feasible point d.
ActiveSetRun active_set(const TRSubproblem& sub, const Eigen::MatrixXd& W, Eigen::VectorXd d, const Tolerances& tols,
                        int max_iter) {
  const int n = sub.dimension();
  const Eigen::VectorXd& g = sub.g;
  const Eigen::VectorXd& a = sub.a;
  const Eigen::VectorXd& lo = sub.lo;
  const Eigen::VectorXd& hi = sub.hi;
  const double mult_tol = tols.mult;
  const double curv_tol = tols.curv;
  const double step_tol = tols.step;
  const double a_scale = tols.a_scale;
  std::vector<signed char> state = bound_states(sub, d);

  StepStatus status = StepStatus::iteration_cap;
  int last_released = -1;
  int iter = 0;
  std::vector<int> free, cols;
  for (; iter < max_iter; ++iter) {
    const Eigen::VectorXd r = g + W * d;
    free.clear();
    for (int i = 0; i < n; ++i) {
      if (state[i] == kFree) free.push_back(i);
    }

    int pivot = -1;
    double a_max = 0.0;
    for (int f : free) {
      if (std::abs(a[f]) > a_max) {
        a_max = std::abs(a[f]);
        pivot = f;
      }
    }
    const bool eq = pivot >= 0 && a_max > 1e-14 * a_scale;
    cols.clear();
    for (int f : free) {
      if (!eq || f != pivot) cols.push_back(f);
    }
    const int nr = static_cast<int>(cols.size());

    // Null-space basis of the equality on the free face: column u is
    // e_{cols[u]} - c_u e_pivot.
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    bool to_boundary = false;
    if (nr > 0) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(nr);
      if (eq) {
        for (int u = 0; u < nr; ++u) c[u] = a[cols[u]] / a[pivot];
      }
      Eigen::MatrixXd H(nr, nr);
      Eigen::VectorXd z(nr);
      for (int u = 0; u < nr; ++u) {
        const int fu = cols[u];
        z[u] = r[fu] - (eq ? c[u] * r[pivot] : 0.0);
        for (int v = 0; v < nr; ++v) {
          const int fv = cols[v];
          double h = W(fu, fv);
          if (eq) h += -c[v] * W(fu, pivot) - c[u] * W(pivot, fv) + c[u] * c[v] * W(pivot, pivot);
          H(u, v) = h;
        }
      }

      Eigen::VectorXd s;
      Eigen::LLT<Eigen::MatrixXd> llt(H);
      bool positive_definite = llt.info() == Eigen::Success;
      if (positive_definite) {
        const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
        positive_definite = diag.minCoeff() > 0.0 && diag.cwiseAbs2().minCoeff() > curv_tol;
      }
      if (positive_definite) {
        s = -llt.solve(z);
      } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
        const Eigen::VectorXd& lambda = eig.eigenvalues();
        const Eigen::MatrixXd& V = eig.eigenvectors();
        if (lambda[0] < -curv_tol) {
          s = V.col(0);
          if (s.dot(z) > 0.0) s = -s;
          to_boundary = true;
        } else {
          const Eigen::VectorXd coef = V.transpose() * z;
          Eigen::VectorXd flat = Eigen::VectorXd::Zero(nr);
          Eigen::VectorXd newton = Eigen::VectorXd::Zero(nr);
          for (int t = 0; t < nr; ++t) {
            if (lambda[t] <= curv_tol) {
              flat += coef[t] * V.col(t);
            } else {
              newton -= (coef[t] / lambda[t]) * V.col(t);
            }
          }
          if (flat.lpNorm<Eigen::Infinity>() > mult_tol) {
            s = -flat;
            to_boundary = true;
          } else {
            s = newton;
          }
        }
      }
      for (int u = 0; u < nr; ++u) p[cols[u]] = s[u];
      if (eq) p[pivot] = -c.dot(s);
    }

    const double p_max = p.lpNorm<Eigen::Infinity>();
    if (p_max > step_tol) {
      double alpha = to_boundary ? kInf : 1.0;
      int block = -1;
      signed char side = kFree;
      const double tiny = 1e-15 * p_max;
      for (int f : free) {
        double t;
        signed char sf;
        if (p[f] < -tiny) {
          t = (lo[f] - d[f]) / p[f];
          sf = kAtLower;
        } else if (p[f] > tiny) {
          t = (hi[f] - d[f]) / p[f];
          sf = kAtUpper;
        } else {
          continue;
        }
        t = std::max(t, 0.0);
        if (t < alpha) {
          alpha = t;
          block = f;
          side = sf;
        }
      }
      if (block < 0 && to_boundary) break;  // unbounded ray cannot occur in a box
      if (alpha == 0.0 && block == last_released) break;
      d += alpha * p;
      for (int f : free) d[f] = std::clamp(d[f], lo[f], hi[f]);
      if (block >= 0) {
        d[block] = side == kAtLower ? lo[block] : hi[block];
        state[block] = side;
      }
      if (eq && state[pivot] == kFree) {
        const double moved = d[pivot] - a.dot(d) / a[pivot];
        if (moved >= lo[pivot] && moved <= hi[pivot]) d[pivot] = moved;
      }
      last_released = -1;
      continue;
    }

    // Stationary on the current face: release the most violated bound.
    const double nu = equality_multiplier(r, a, state);
    int release = -1;
    double worst = mult_tol;
    for (int i = 0; i < n; ++i) {
      if (state[i] == kFree) continue;
      const double mu = r[i] + nu * a[i];
      const double violation = state[i] == kAtLower ? -mu : mu;
      if (violation > worst) {
        worst = violation;
        release = i;
      }
    }
    if (release < 0) {
      status = StepStatus::stationary;
      break;
    }
    state[release] = kFree;
    last_released = release;
  }

  return {d, status, iter};
}

// Minimizes the model over the relative interior of every face with at most
// kFaceSearchMaxDimension coordinates. Free sets whose reduced Hessian has
// negative curvature are skipped: no local minimizer lies inside them. Every
// fixed coordinate sits at a bound, so each (free set, bound choice) pair is
// one face and the enumeration covers 3^n faces.
std::optional<Eigen::VectorXd> face_search(const TRSubproblem& sub, const Eigen::MatrixXd& W, const Tolerances& tols) {
  const int n = sub.dimension();
  const Eigen::VectorXd& a = sub.a;
  std::optional<Eigen::VectorXd> best;
  double best_value = kInf;
  std::vector<int> free, fixed;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    free.clear();
    fixed.clear();
    for (int i = 0; i < n; ++i) (mask >> i & 1u ? free : fixed).push_back(i);
    const int nf = static_cast<int>(free.size());

    Eigen::VectorXd a_f(nf);
    for (int u = 0; u < nf; ++u) a_f[u] = a[free[u]];
    const bool eq = nf > 0 && a_f.lpNorm<Eigen::Infinity>() > 1e-14 * tols.a_scale;
    Eigen::MatrixXd Z;
    if (eq) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(a_f);
      Z = Eigen::MatrixXd(qr.householderQ()).rightCols(nf - 1);
    } else {
      Z = Eigen::MatrixXd::Identity(nf, nf);
    }
    Eigen::MatrixXd W_ff(nf, nf);
    for (int u = 0; u < nf; ++u)
      for (int v = 0; v < nf; ++v) W_ff(u, v) = W(free[u], free[v]);
    const Eigen::MatrixXd H = Z.transpose() * W_ff * Z;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    if (H.size() > 0) {
      eig.compute(H);
      if (eig.eigenvalues()[0] < -tols.curv) continue;
    }

    const int nx = static_cast<int>(fixed.size());
    for (unsigned choice = 0; choice < (1u << nx); ++choice) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
      double b = 0.0;
      for (int t = 0; t < nx; ++t) {
        const int i = fixed[t];
        d[i] = choice >> t & 1u ? sub.hi[i] : sub.lo[i];
        b -= a[i] * d[i];
      }
      // Particular solution of a_f'd_f = b, then the face minimizer in Z.
      if (eq) {
        const Eigen::VectorXd d0 = a_f * (b / a_f.squaredNorm());
        for (int u = 0; u < nf; ++u) d[free[u]] = d0[u];
      } else if (std::abs(b) > 1e-12 * std::max(1.0, tols.a_scale)) {
        continue;
      }
      if (H.size() > 0) {
        const Eigen::VectorXd r = sub.g + W * d;
        Eigen::VectorXd r_f(nf);
        for (int u = 0; u < nf; ++u) r_f[u] = r[free[u]];
        const Eigen::VectorXd coef = eig.eigenvectors().transpose() * (Z.transpose() * r_f);
        Eigen::VectorXd y = Eigen::VectorXd::Zero(H.rows());
        bool bounded = true;
        for (Eigen::Index t = 0; t < H.rows(); ++t) {
          if (eig.eigenvalues()[t] > tols.curv) {
            y -= (coef[t] / eig.eigenvalues()[t]) * eig.eigenvectors().col(t);
          } else if (std::abs(coef[t]) > tols.mult) {
            bounded = false;  // linear descent along a flat direction: the minimum is on a sub-face
            break;
          }
        }
        if (!bounded) continue;
        const Eigen::VectorXd step = Z * y;
        for (int u = 0; u < nf; ++u) d[free[u]] += step[u];
      }
      bool feasible = true;
      for (int u = 0; u < nf && feasible; ++u) {
        const int i = free[u];
        const double slack = 1e-12 * std::max(1.0, sub.hi[i] - sub.lo[i]);
        feasible = d[i] >= sub.lo[i] - slack && d[i] <= sub.hi[i] + slack;
      }
      if (!feasible) continue;
      for (int u = 0; u < nf; ++u) d[free[u]] = std::clamp(d[free[u]], sub.lo[free[u]], sub.hi[free[u]]);
      const double v = model_value(sub, d);
      if (v < best_value) {
        best_value = v;
        best = d;
      }
    }
  }
  return best;
}

// Smallest eigenvalue of W on the null space of a over all coordinates.
double tangent_min_curvature(const Eigen::MatrixXd& W, const Eigen::VectorXd& a, double a_scale) {
  const Eigen::Index n = W.rows();
  Eigen::MatrixXd Z;
  if (a_scale > 0.0) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Z = Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);
  } else {
    Z = Eigen::MatrixXd::Identity(n, n);
  }
  if (Z.cols() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Z.transpose() * W * Z, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

}  // namespace

StepResult solve_tr_qp(const TRSubproblem& sub, double tol, int max_iter) {
  sub.validate();
  const int n = sub.dimension();
  StepResult result;
  result.d = Eigen::VectorXd::Zero(n);
  if (n == 0) return result;
  if (max_iter <= 0) max_iter = 50 * n;

  const Eigen::MatrixXd W = sub.W.to_dense();
  const double w_scale = W.cwiseAbs().maxCoeff();
  const double range = (sub.hi - sub.lo).maxCoeff();
  const double g_scale = std::max(sub.g.lpNorm<Eigen::Infinity>(), w_scale * range);
  if (g_scale == 0.0) return result;
  // Relative tolerances keep the decisions invariant under joint scaling of
  // g and W.
  Tolerances tols;
  tols.mult = std::min(1e-12 * g_scale, 0.01 * tol);
  tols.curv = 1e-11 * w_scale;
  tols.step = 1e-13 * range;
  tols.a_scale = sub.a.lpNorm<Eigen::Infinity>();

  const Eigen::VectorXd d_cauchy = cauchy_point(sub);
  const double q_cauchy = model_value(sub, d_cauchy);
  ActiveSetRun run = active_set(sub, W, d_cauchy, tols, max_iter);
  int iterations = run.iterations;

  // The active-set method stops at a local minimizer. On small nonconvex
  // problems the face search finds the global one, and a second active-set
  // pass from it cleans up the bound states.
  if (n <= kFaceSearchMaxDimension && tangent_min_curvature(W, sub.a, tols.a_scale) < -tols.curv) {
    if (auto candidate = face_search(sub, W, tols)) {
      if (model_value(sub, *candidate) < model_value(sub, run.d)) {
        ActiveSetRun polished = active_set(sub, W, *candidate, tols, max_iter);
        iterations += polished.iterations;
        if (model_value(sub, polished.d) > model_value(sub, *candidate)) polished.d = *candidate;
        run.d = polished.d;
        run.status = polished.status;
      }
    }
  }

  Eigen::VectorXd d = run.d;
  StepStatus status = run.status;
  if (model_value(sub, d) > q_cauchy) {
    d = d_cauchy;
    status = StepStatus::cauchy_only;
  }
  result.d = d;
  result.model_decrease = std::max(0.0, -model_value(sub, d));
  result.kkt_residual = qp_kkt_residual(sub, d);
  result.status = status;
  result.iterations = iterations;
  return result;
}

}  // namespace hypercon
