#include <doctest.h>

#include <random>

#include "core/oracle.hpp"
#include "core/subproblem.hpp"
#include "support.hpp"

using namespace hypercon;
using testing::Curvature;

namespace {

TRSubproblem box_problem(Eigen::VectorXd g, const Eigen::MatrixXd& W, Eigen::VectorXd a, double radius) {
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(g.size(), 100.0);  // lower bounds come from the radius
  return make_tr_subproblem(std::move(g), testing::dense_to_sparse(W), std::move(a), x, radius);
}

double feasibility_violation(const TRSubproblem& sub, const Eigen::VectorXd& d) {
  double v = std::abs(sub.a.dot(d)) / std::max(1.0, sub.a.norm());
  for (int i = 0; i < sub.dimension(); ++i) {
    v = std::max(v, sub.lo[i] - d[i]);
    v = std::max(v, d[i] - sub.hi[i]);
  }
  return v;
}

}  // namespace

TEST_CASE("zero gradient with a definite model gives the zero step") {
  auto sub = box_problem(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity(), Eigen::Vector3d(1, 2, 3), 1.0);
  auto res = solve_tr_qp(sub);
  CHECK(res.d.norm() == 0.0);
  CHECK(res.model_decrease == 0.0);
  CHECK(cauchy_point(sub).norm() == 0.0);
}

TEST_CASE("gradient parallel to the constraint normal") {
  const double c = 1.0 / std::sqrt(3.0);
  auto sub = box_problem(Eigen::Vector3d(-1, -1, -1), Eigen::Matrix3d::Identity(), Eigen::Vector3d(c, c, c), 10.0);
  auto res = solve_tr_qp(sub);
  CHECK(res.d.lpNorm<Eigen::Infinity>() <= 1e-14);
  CHECK(res.status == StepStatus::stationary);
}

TEST_CASE("linear model moves to the box corner") {
  auto sub = box_problem(Eigen::Vector2d(0, -1), Eigen::Matrix2d::Zero(), Eigen::Vector2d(1, 0), 1.0);
  auto dc = cauchy_point(sub);
  CHECK(dc[0] == doctest::Approx(0.0));
  CHECK(dc[1] == doctest::Approx(1.0));
  CHECK(-model_value(sub, dc) == doctest::Approx(1.0));
  auto res = solve_tr_qp(sub);
  CHECK(res.model_decrease == doctest::Approx(1.0));
}

TEST_CASE("projection is the closest feasible point") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + trial % 6;
    auto sub = testing::random_subproblem(rng, dim, Curvature::definite);
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z[i] = normal(rng);
    // min ||d - z||^2 / 2 is the subproblem with g = -z and W = I.
    TRSubproblem dist = sub;
    dist.g = -z;
    dist.W = testing::dense_to_sparse(Eigen::MatrixXd::Identity(dim, dim));
    const auto oracle = qp_enum_oracle(dist);
    const Eigen::VectorXd p = project_feasible(sub, z);
    CHECK(feasibility_violation(sub, p) <= 1e-10);
    CHECK((p - oracle.d).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("Cauchy point never increases the model") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    auto sub = testing::random_subproblem(rng, 1 + trial % 8, static_cast<Curvature>(trial % 3));
    const Eigen::VectorXd dc = cauchy_point(sub);
    CHECK(model_value(sub, dc) <= 0.0);
    CHECK(feasibility_violation(sub, dc) <= 1e-10);
  }
}

TEST_CASE("active-set solution matches enumeration") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto kind = static_cast<Curvature>(trial % 3);
    auto sub = testing::random_subproblem(rng, 1 + trial % 6, kind);
    const auto res = solve_tr_qp(sub);
    const auto oracle = qp_enum_oracle(sub);
    const double v = model_value(sub, res.d);
    CHECK(feasibility_violation(sub, res.d) <= 1e-10);
    CHECK(v <= model_value(sub, cauchy_point(sub)) + 1e-14);
    CHECK(res.model_decrease >= 0.0);
    CHECK(v <= oracle.value + 1e-8);
    if (kind != Curvature::indefinite) {
      CHECK(std::abs(v - oracle.value) <= 1e-8);
      CHECK(res.kkt_residual <= 1e-10);
    }
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("larger definite problems reach small KKT residuals") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    auto sub = testing::random_subproblem(rng, 10 + trial, Curvature::definite);
    const auto res = solve_tr_qp(sub);
    CHECK(res.status == StepStatus::stationary);
    CHECK(res.kkt_residual <= 1e-10);
    CHECK(feasibility_violation(sub, res.d) <= 1e-10);
  }
}

TEST_CASE("joint scaling of g and W leaves the step unchanged") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    auto sub = testing::random_subproblem(rng, 2 + trial % 5, static_cast<Curvature>(trial % 3));
    TRSubproblem scaled = sub;
    const double s = trial % 2 == 0 ? 1e3 : 1e-3;
    scaled.g *= s;
    for (double& v : scaled.W.values) v *= s;
    const auto a = solve_tr_qp(sub);
    const auto b = solve_tr_qp(scaled);
    CHECK((a.d - b.d).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("invalid subproblems are rejected") {
  auto sub = box_problem(Eigen::Vector2d(1, 1), Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 1), 1.0);
  TRSubproblem bad = sub;
  bad.lo[0] = 0.5;
  CHECK_THROWS_AS(solve_tr_qp(bad), std::invalid_argument);
  bad = sub;
  bad.a = Eigen::Vector3d(1, 1, 1);
  CHECK_THROWS_AS(solve_tr_qp(bad), std::invalid_argument);
}
