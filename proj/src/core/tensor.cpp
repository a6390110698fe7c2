#include "core/tensor.hpp"

#include <algorithm>
#include <utility>

namespace hypercon {

double ipow(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const int i = rows[t], j = cols[t];
    out[i] += values[t] * v[j];
    if (i != j) out[j] += values[t] * v[i];
  }
  return out;
}

double SparseSymMatrix::quadratic_form(const Eigen::VectorXd& v) const {
  double s = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    const int i = rows[t], j = cols[t];
    s += (i == j ? 1.0 : 2.0) * values[t] * v[i] * v[j];
  }
  return s;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dimension, dimension);
  for (std::size_t t = 0; t < values.size(); ++t) {
    out(rows[t], cols[t]) += values[t];
    if (rows[t] != cols[t]) out(cols[t], rows[t]) += values[t];
  }
  return out;
}

LaplacianForm::LaplacianForm(const Hypergraph& h) : graph_(&h) {
  const int n = h.n(), k = h.k(), m = h.m();
  diagonal_slot_.assign(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (h.degree(v) > 0) {
      diagonal_slot_[v] = static_cast<int>(pattern_rows_.size());
      pattern_rows_.push_back(v);
      pattern_cols_.push_back(v);
    }
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m) * k * (k - 1) / 2);
  for (int e = 0; e < m; ++e) {
    auto row = h.edge(e);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) pairs.emplace_back(row[a], row[b]);
  }
  std::vector<std::pair<int, int>> unique_pairs = pairs;
  std::sort(unique_pairs.begin(), unique_pairs.end());
  unique_pairs.erase(std::unique(unique_pairs.begin(), unique_pairs.end()), unique_pairs.end());
  const int offset = static_cast<int>(pattern_rows_.size());
  for (auto [i, j] : unique_pairs) {
    pattern_rows_.push_back(i);
    pattern_cols_.push_back(j);
  }
  pair_slots_.resize(pairs.size());
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    auto it = std::lower_bound(unique_pairs.begin(), unique_pairs.end(), pairs[t]);
    pair_slots_[t] = offset + static_cast<int>(it - unique_pairs.begin());
  }
}

double LaplacianForm::value(const Eigen::VectorXd& x) const {
  const Hypergraph& h = *graph_;
  const int k = h.k();
  double diag = 0.0;
  for (int v = 0; v < h.n(); ++v) diag += h.degree(v) * ipow(x[v], k);
  return diag - adjacency_value(x);
}

double LaplacianForm::adjacency_value(const Eigen::VectorXd& x) const {
  const Hypergraph& h = *graph_;
  double products = 0.0;
  for (int e = 0; e < h.m(); ++e) {
    double p = 1.0;
    for (int v : h.edge(e)) p *= x[v];
    products += p;
  }
  return h.k() * products;
}

Eigen::VectorXd LaplacianForm::gradient_contraction(const Eigen::VectorXd& x) const {
  const Hypergraph& h = *graph_;
  const int k = h.k();
  Eigen::VectorXd out(h.n());
  for (int v = 0; v < h.n(); ++v) out[v] = h.degree(v) * ipow(x[v], k - 1);
  std::vector<double> prefix(static_cast<std::size_t>(k) + 1);
  for (int e = 0; e < h.m(); ++e) {
    auto row = h.edge(e);
    // Leave-one-out products from a forward prefix and a backward running
    // suffix; no division, so zero coordinates are fine.
    prefix[0] = 1.0;
    for (int t = 0; t < k; ++t) prefix[t + 1] = prefix[t] * x[row[t]];
    double suffix = 1.0;
    for (int t = k - 1; t >= 0; --t) {
      out[row[t]] -= prefix[t] * suffix;
      suffix *= x[row[t]];
    }
  }
  return out;
}

SparseSymMatrix LaplacianForm::hessian_contraction(const Eigen::VectorXd& x) const {
  const Hypergraph& h = *graph_;
  const int k = h.k();
  SparseSymMatrix out;
  out.dimension = h.n();
  out.rows = pattern_rows_;
  out.cols = pattern_cols_;
  out.values.assign(pattern_rows_.size(), 0.0);
  for (int v = 0; v < h.n(); ++v) {
    if (diagonal_slot_[v] >= 0) out.values[diagonal_slot_[v]] = h.degree(v) * ipow(x[v], k - 2);
  }
  const double scale = -1.0 / (k - 1);
  std::vector<double> prefix(static_cast<std::size_t>(k) + 1), suffix(static_cast<std::size_t>(k) + 1);
  const int pairs_per_edge = k * (k - 1) / 2;
  for (int e = 0; e < h.m(); ++e) {
    auto row = h.edge(e);
    prefix[0] = 1.0;
    for (int t = 0; t < k; ++t) prefix[t + 1] = prefix[t] * x[row[t]];
    suffix[k] = 1.0;
    for (int t = k - 1; t >= 0; --t) suffix[t] = suffix[t + 1] * x[row[t]];
    const int* slot = pair_slots_.data() + static_cast<std::size_t>(e) * pairs_per_edge;
    for (int a = 0; a < k; ++a) {
      double middle = 1.0;  // product of entries strictly between a and b
      for (int b = a + 1; b < k; ++b) {
        out.values[*slot++] += scale * prefix[a] * middle * suffix[b + 1];
        middle *= x[row[b]];
      }
    }
  }
  return out;
}

double lap_value(const Hypergraph& h, const Eigen::VectorXd& x) { return LaplacianForm(h).value(x); }

Eigen::VectorXd lap_grad(const Hypergraph& h, const Eigen::VectorXd& x) {
  return LaplacianForm(h).gradient_contraction(x);
}

SparseSymMatrix lap_hess(const Hypergraph& h, const Eigen::VectorXd& x) {
  return LaplacianForm(h).hessian_contraction(x);
}

std::vector<int> free_coordinates(int n, int pinned) {
  std::vector<int> free;
  free.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i != pinned) free.push_back(i);
  }
  return free;
}

LagrangianParts lagrangian_parts(const HomogeneousForm& form, const Eigen::VectorXd& x,
                                 std::span<const int> free, double lambda) {
  const int n = form.dimension();
  const int k = form.degree();
  const int reduced = static_cast<int>(free.size());
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < reduced; ++r) position[free[r]] = r;

  LagrangianParts parts;
  const Eigen::VectorXd grad = form.gradient_contraction(x);
  parts.g.resize(reduced);
  for (int r = 0; r < reduced; ++r) {
    const int i = free[r];
    parts.g[r] = grad[i] - lambda * ipow(x[i], k - 1);
  }

  SparseSymMatrix full = form.hessian_contraction(x);
  SparseSymMatrix& W = parts.W;
  W.dimension = reduced;
  W.rows.reserve(full.nonzeros());
  W.cols.reserve(full.nonzeros());
  W.values.reserve(full.nonzeros());
  std::vector<char> has_diagonal(static_cast<std::size_t>(reduced), 0);
  for (std::size_t t = 0; t < full.nonzeros(); ++t) {
    const int pi = position[full.rows[t]], pj = position[full.cols[t]];
    if (pi < 0 || pj < 0) continue;
    double v = full.values[t];
    if (pi == pj) {
      v -= lambda * ipow(x[full.rows[t]], k - 2);
      has_diagonal[pi] = 1;
    }
    W.rows.push_back(std::min(pi, pj));
    W.cols.push_back(std::max(pi, pj));
    W.values.push_back((k - 1) * v);
  }
  for (int r = 0; r < reduced; ++r) {
    if (!has_diagonal[r]) {
      W.rows.push_back(r);
      W.cols.push_back(r);
      W.values.push_back(-(k - 1) * lambda * ipow(x[free[r]], k - 2));
    }
  }
  return parts;
}

LagrangianParts lagrangian_parts(const Hypergraph& h, const PinnedPoint& p, double lambda) {
  LaplacianForm form(h);
  auto free = free_coordinates(h.n(), p.pinned);
  return lagrangian_parts(form, p.x, free, lambda);
}

}  // namespace hypercon
