#ifndef HYPERCON_CORE_SUBPROBLEM_HPP
#define HYPERCON_CORE_SUBPROBLEM_HPP

#include <Eigen/Core>

#include "core/tensor.hpp"

namespace hypercon {

/// The infinity-norm trust-region model problem
///
///   minimize    g'd + 1/2 d'Wd
///   subject to  a'd = 0,  lo <= d <= hi
///
/// with lo = max(-radius, -x) and hi = radius, so d = 0 is always feasible.
struct TRSubproblem {
  Eigen::VectorXd g;
  SparseSymMatrix W;
  Eigen::VectorXd a;
  double radius = 1.0;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dimension() const noexcept { return static_cast<int>(g.size()); }
  /// Throws std::invalid_argument when sizes disagree or lo <= 0 <= hi fails.
  void validate() const;
};

/// Builds the bounds from the current (reduced) iterate x and the radius.
TRSubproblem make_tr_subproblem(Eigen::VectorXd g, SparseSymMatrix W, Eigen::VectorXd a,
                                const Eigen::VectorXd& x, double radius);

inline constexpr int kFaceSearchMaxDimension = 8;

enum class StepStatus { stationary, iteration_cap, cauchy_only };

struct StepResult {
  Eigen::VectorXd d;
  double model_decrease = 0.0;  ///< m(0) - m(d), never negative
  double kkt_residual = 0.0;
  StepStatus status = StepStatus::stationary;
  int iterations = 0;
};

/// g'd + 1/2 d'Wd (the constant term of the model is omitted).
double model_value(const TRSubproblem& sub, const Eigen::VectorXd& d);

/// Euclidean projection of z onto {a'd = 0} intersected with the box. The
/// multiplier of the equality is found by a breakpoint search, so the result
/// is exact up to rounding.
Eigen::VectorXd project_feasible(const TRSubproblem& sub, const Eigen::VectorXd& z);

/// Global minimizer of the model along the projected steepest-descent path
/// d(tau) = project_feasible(-tau g), tau >= 0. Always satisfies
/// model_value(cauchy_point) <= 0.
Eigen::VectorXd cauchy_point(const TRSubproblem& sub);

/// Box/equality KKT residual || min(d - lo, max(d - hi, r)) ||_inf where r is
/// the model gradient corrected by the best equality multiplier.
double qp_kkt_residual(const TRSubproblem& sub, const Eigen::VectorXd& d);

/// Primal active-set solve warm-started from the Cauchy point. Bounds are
/// activated and released one at a time (smallest index on ties); faces with
/// negative curvature are left along an eigenvector of the reduced Hessian.
/// When the model is nonconvex on {a'd = 0} and the dimension is at most
/// kFaceSearchMaxDimension, every face is searched as well, so the returned
/// step is a global minimizer. Larger nonconvex problems get a local one.
/// max_iter <= 0 selects 50 * dimension.
StepResult solve_tr_qp(const TRSubproblem& sub, double tol = 1e-10, int max_iter = 0);

}  // namespace hypercon

#endif  // HYPERCON_CORE_SUBPROBLEM_HPP
