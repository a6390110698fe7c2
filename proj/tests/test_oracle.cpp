#include <doctest.h>

#include <random>

#include "core/ftr.hpp"
#include "core/oracle.hpp"
#include "support.hpp"

using namespace hypercon;
using testing::Curvature;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(8, 2) == 28.0);
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(3, 5) == 0.0);
  CHECK(binomial(5, 0) == 1.0);
  CHECK(binomial(-1, 0) == 0.0);
}

TEST_CASE("closed forms") {
  CHECK(*closed_form_alpha(ClosedFormKind::complete, 10, 3) == 8.0);
  CHECK(*closed_form_alpha(ClosedFormKind::complete, 6, 4) == 6.0);
  CHECK(*closed_form_alpha(ClosedFormKind::single_edge, 4, 4) == 1.0);
  CHECK_FALSE(closed_form_alpha(ClosedFormKind::complete, 2, 3).has_value());
}

TEST_CASE("grid oracle examples") {
  CHECK(grid_alpha_j(make_complete(3, 3), 2, GridSpec{7, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(grid_alpha_j(make_complete(5, 3), 0, GridSpec{30, 3}) - 3.0) <= 1e-3);
  CHECK_THROWS_AS(grid_alpha_j(make_complete_minus(14, 3), 0, GridSpec{4, 0}), std::invalid_argument);
}

TEST_CASE("grid oracle bounds the solver from above and refines with depth") {
  FTRConfig cfg;
  cfg.restarts = 10;
  cfg.threads = 1;
  for (const auto& h : {make_s_path(4, 2, 2), make_squid(3), make_complete_minus(6, 3)}) {
    auto res = compute_alpha(h, cfg, Strategy::all);
    for (int j = 0; j < h.n(); ++j) {
      const double coarse = grid_alpha_j(h, j, GridSpec{8, 0});
      const double fine = grid_alpha_j(h, j, GridSpec{16, 0});
      CHECK(fine <= coarse + 1e-15);
      CHECK(fine >= res.per_vertex[j].alpha_j - 1e-9);
    }
  }
}

TEST_CASE("grid agrees with the solver on the 6-vertex 2-path") {
  FTRConfig cfg;
  cfg.restarts = 10;
  cfg.threads = 1;
  auto h = make_s_path(4, 2, 2);
  CHECK(std::abs(grid_alpha(h, GridSpec{40, 3}) - compute_alpha(h, cfg, Strategy::all).alpha) <= 1e-3);
}

TEST_CASE("QP enumeration oracle") {
  SUBCASE("zero gradient") {
    auto sub = make_tr_subproblem(Eigen::Vector3d::Zero(), testing::dense_to_sparse(Eigen::Matrix3d::Identity()),
                                  Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, 1, 1), 1.0);
    auto res = qp_enum_oracle(sub);
    CHECK(res.value == 0.0);
    CHECK(res.d.norm() == 0.0);
  }
  SUBCASE("beats random feasible points on indefinite problems") {
    std::mt19937_64 rng(19);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      auto sub = testing::random_subproblem(rng, 4, Curvature::indefinite);
      const double best = qp_enum_oracle(sub).value;
      for (int s = 0; s < 10000; ++s) {
        Eigen::VectorXd z(4);
        for (int i = 0; i < 4; ++i) z[i] = 2.0 * normal(rng);
        CHECK(best <= model_value(sub, project_feasible(sub, z)) + 1e-12);
      }
    }
  }
  SUBCASE("not worse than the active-set solver") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
      auto sub = testing::random_subproblem(rng, 1 + trial % 6, static_cast<Curvature>(trial % 3));
      CHECK(qp_enum_oracle(sub).value <= model_value(sub, solve_tr_qp(sub).d) + 1e-8);
    }
  }
}

TEST_CASE("chain quartic form") {
  ChainQuarticForm q(6);
  Eigen::VectorXd y(6);
  y << 0.3, 0.5, 0.7, 0.2, 0.4, 0.6;
  const double expect = std::pow(0.3, 4) + std::pow(0.5, 4) + std::pow(0.7, 4) + std::pow(0.2, 4) -
                        4 * (0.3 * 0.5 * 0.7 * 0.2 + 0.7 * 0.2 * 0.4 * 0.6);
  CHECK(q.value(y) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(y.dot(q.gradient_contraction(y)) == doctest::Approx(q.value(y)).epsilon(1e-13));
  CHECK((q.hessian_contraction(y).multiply(y) - q.gradient_contraction(y)).norm() <= 1e-14);

  const double h = 1e-6;
  Eigen::MatrixXd H = 12.0 * q.hessian_contraction(y).to_dense();
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXd yp = y, ym = y;
    yp[i] += h;
    ym[i] -= h;
    CHECK((q.value(yp) - q.value(ym)) / (2 * h) == doctest::Approx(4.0 * q.gradient_contraction(y)[i]).epsilon(1e-7));
    const Eigen::VectorXd col = 4.0 * (q.gradient_contraction(yp) - q.gradient_contraction(ym)) / (2 * h);
    CHECK((col - H.col(i)).norm() <= 1e-7);
  }
  CHECK_THROWS(ChainQuarticForm(5));
}

TEST_CASE("beta for short chains") {
  FTRConfig cfg;
  cfg.restarts = 20;
  cfg.threads = 1;
  const double b4 = beta_two_path(4, cfg);
  const double b6 = beta_two_path(6, cfg);
  CHECK(b4 <= -0.5 + 1e-9);
  CHECK(b6 <= b4 + 1e-12);
  CHECK_THROWS(beta_two_path(7, cfg));
}

TEST_CASE("vertex-cut upper bound") {
  CHECK(upper_bound_vertex_cut(10, 3, 7) == doctest::Approx(8.0 - 2.0 / 9.0).epsilon(1e-14));
  CHECK(upper_bound_vertex_cut(20, 3, 17) == doctest::Approx(18.0 - 2.0 / 19.0).epsilon(1e-14));
  for (int n = 5; n <= 12; ++n) CHECK(upper_bound_vertex_cut(n, 3, n - 3) <= binomial(n - 2, 1));
  CHECK_THROWS(upper_bound_vertex_cut(10, 3, 8));
  CHECK_THROWS(upper_bound_vertex_cut(10, 3, 0));
}

TEST_CASE("edge connectivity") {
  CHECK(edge_connectivity_small(make_sunflower(3, 3)) == 1);
  CHECK(edge_connectivity_small(parse_hypergraph("3 6 2\n1 2 3\n4 5 6")) == 0);
  const int e4 = edge_connectivity_small(make_complete(4, 3));
  CHECK(e4 == 3);
  CHECK(e4 >= 4.0 / 3.0 * 2.0 - 1e-12);
  CHECK(edge_connectivity_small(make_hypercycle(3, 4)) == 1);  // degree-1 vertices
  CHECK(edge_connectivity_small(parse_hypergraph("3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4")) == 3);
  CHECK_THROWS(edge_connectivity_small(make_complete(7, 3)));
}
