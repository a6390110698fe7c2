#ifndef HYPERCON_TESTS_SUPPORT_HPP
#define HYPERCON_TESTS_SUPPORT_HPP

// Helpers shared by the test binaries. The evaluators here work from the raw
// edge list, independent of the streaming contractions under test.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "core/hypergraph.hpp"
#include "core/subproblem.hpp"

namespace testing {

inline double naive_lap_value(const hypercon::Hypergraph& h, const Eigen::VectorXd& x) {
  double s = 0.0;
  for (int e = 0; e < h.m(); ++e) {
    double sum = 0.0, prod = 1.0;
    for (int v : h.edge(e)) {
      sum += std::pow(x[v], h.k());
      prod *= x[v];
    }
    s += sum - h.k() * prod;
  }
  return s;
}

/// Random k-uniform hypergraph on n vertices with m distinct edges.
inline hypercon::Hypergraph random_hypergraph(std::mt19937_64& rng, int n, int k, int m) {
  std::set<std::vector<int>> edges;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  int guard = 0;
  while (static_cast<int>(edges.size()) < m && guard++ < 100000) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> e(perm.begin(), perm.begin() + k);
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  return hypercon::Hypergraph(n, k, std::vector<std::vector<int>>(edges.begin(), edges.end()));
}

/// Random connected instance: n in [k+1, max_n], enough edges to connect.
inline hypercon::Hypergraph random_connected(std::mt19937_64& rng, int max_n, int k) {
  std::uniform_int_distribution<int> pick_n(k + 1, max_n);
  for (;;) {
    const int n = pick_n(rng);
    const int lo = (n - 1 + k - 2) / (k - 1);
    std::uniform_int_distribution<int> pick_m(lo, lo + 4);
    auto h = random_hypergraph(rng, n, k, pick_m(rng));
    if (hypercon::is_connected(h)) return h;
  }
}

/// Uniformly random nonnegative point with x[j] = 0 on the k-norm sphere.
inline Eigen::VectorXd random_sphere_point(std::mt19937_64& rng, int n, int k, int j) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = i == j ? 0.0 : u(rng);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(x[i], k);
  return x / std::pow(s, 1.0 / k);
}

enum class Curvature { definite, semidefinite, indefinite };

inline hypercon::SparseSymMatrix dense_to_sparse(const Eigen::MatrixXd& M) {
  hypercon::SparseSymMatrix S;
  S.dimension = static_cast<int>(M.rows());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = i; j < M.cols(); ++j) {
      S.rows.push_back(i);
      S.cols.push_back(j);
      S.values.push_back(M(i, j));
    }
  return S;
}

/// Trust-region subproblem shaped like the solver's: a = x^[k-1] for a
/// random nonnegative x with occasional zeros, bounds from x and a radius.
inline hypercon::TRSubproblem random_subproblem(std::mt19937_64& rng, int dim, Curvature curvature) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd x(dim), g(dim), a(dim);
  for (int i = 0; i < dim; ++i) {
    x[i] = unit(rng) < 0.2 ? 0.0 : unit(rng);
    a[i] = x[i] * x[i];
    g[i] = normal(rng);
  }
  if (a.maxCoeff() == 0.0) {
    x[0] = 0.5;
    a[0] = 0.25;
  }
  Eigen::MatrixXd B(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) B(i, j) = normal(rng);
  Eigen::MatrixXd W;
  switch (curvature) {
    case Curvature::definite: W = B * B.transpose() + 0.1 * Eigen::MatrixXd::Identity(dim, dim); break;
    case Curvature::semidefinite: {
      Eigen::MatrixXd C = B.leftCols(std::max(1, dim / 2));
      W = C * C.transpose();
      break;
    }
    case Curvature::indefinite: W = 0.5 * (B + B.transpose()); break;
  }
  const double radius = 0.05 + 2.0 * unit(rng);
  return hypercon::make_tr_subproblem(g, dense_to_sparse(W), a, x, radius);
}

}  // namespace testing

#endif  // HYPERCON_TESTS_SUPPORT_HPP
