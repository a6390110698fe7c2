#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>

namespace hypercon {

namespace {

struct GridWalker {
  const LaplacianForm& form;
  const std::vector<int>& free;
  const std::vector<double>& roots;  // roots[u] = (u / depth)^{1/k}
  int depth;
  Eigen::VectorXd x;
  std::vector<int> units;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_units;

  void walk(std::size_t pos, int remaining) {
    if (pos + 1 == free.size()) {
      units[pos] = remaining;
      x[free[pos]] = roots[remaining];
      const double v = form.value(x);
      if (v < best) {
        best = v;
        best_units = units;
      }
      return;
    }
    for (int u = 0; u <= remaining; ++u) {
      units[pos] = u;
      x[free[pos]] = roots[u];
      walk(pos + 1, remaining - u);
    }
  }
};

Eigen::VectorXd from_simplex(const Eigen::VectorXd& t, std::span<const int> free, int n, int k) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = std::pow(std::max(t[i], 0.0), 1.0 / k);
  return x;
}

}  // namespace

double binomial(int a, int b) {
  if (b < 0 || a < b) return 0.0;
  b = std::min(b, a - b);
  double r = 1.0;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return std::round(r);
}

Eigen::VectorXd simplex_pattern_search(const HomogeneousForm& form, std::span<const int> free, Eigen::VectorXd x,
                                       double step, int rounds) {
  const int k = form.degree();
  const int n = form.dimension();
  const int r = static_cast<int>(free.size());
  Eigen::VectorXd t(r);
  for (int i = 0; i < r; ++i) t[i] = ipow(x[free[i]], k);
  t /= t.sum();
  double best = form.value(from_simplex(t, free, n, k));

  for (int round = 0; round < rounds; ++round, step *= 0.5) {
    for (int sweep = 0; sweep < 10000; ++sweep) {
      bool improved = false;
      for (int p = 0; p < r; ++p) {
        for (int q = 0; q < r; ++q) {
          if (p == q) continue;
          const double amount = std::min(step, t[q]);
          if (amount <= 0.0) continue;
          Eigen::VectorXd trial = t;
          trial[p] += amount;
          trial[q] -= amount;
          const double v = form.value(from_simplex(trial, free, n, k));
          if (v < best) {
            best = v;
            t = trial;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }
  return from_simplex(t, free, n, k);
}

double grid_alpha_j(const Hypergraph& h, int j, const GridSpec& spec) {
  const int n = h.n(), k = h.k();
  if (j < 0 || j >= n) throw std::invalid_argument("grid oracle: vertex out of range");
  if (spec.depth < 2) throw std::invalid_argument("grid oracle: depth must be at least 2");
  if (spec.refine_rounds < 0) throw std::invalid_argument("grid oracle: refine_rounds must be nonnegative");
  if (n - 1 > kGridMaxFree) {
    throw std::invalid_argument("grid oracle: " + std::to_string(n - 1) + " free coordinates exceed the limit of " +
                                std::to_string(kGridMaxFree) + "; use the multistart solver instead");
  }
  const auto free = free_coordinates(n, j);
  LaplacianForm form(h);
  std::vector<double> roots(static_cast<std::size_t>(spec.depth) + 1);
  for (int u = 0; u <= spec.depth; ++u) roots[u] = std::pow(static_cast<double>(u) / spec.depth, 1.0 / k);

  GridWalker walker{form, free, roots, spec.depth, Eigen::VectorXd::Zero(n), std::vector<int>(free.size(), 0),
                     std::numeric_limits<double>::infinity(), {}};
  walker.walk(0, spec.depth);
  if (spec.refine_rounds == 0) return walker.best;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < free.size(); ++i) x[free[i]] = roots[walker.best_units[i]];
  x = simplex_pattern_search(form, free, x, 0.5 / spec.depth, spec.refine_rounds);
  return std::min(walker.best, form.value(x));
}

double grid_alpha(const Hypergraph& h, const GridSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < h.n(); ++j) best = std::min(best, grid_alpha_j(h, j, spec));
  return best;
}

QPOracleResult qp_enum_oracle(const TRSubproblem& sub) {
  sub.validate();
  const int n = sub.dimension();
  if (n > kQPOracleMaxDimension) throw std::invalid_argument("qp oracle: dimension exceeds 6");
  const Eigen::MatrixXd W = sub.W.to_dense();
  const double a_norm = sub.a.norm();
  const double scale = std::max(1.0, sub.hi.cwiseMax(-sub.lo).maxCoeff());

  QPOracleResult best;
  best.d = Eigen::VectorXd::Zero(n);
  best.value = 0.0;  // d = 0 is feasible

  int patterns = 1;
  for (int i = 0; i < n; ++i) patterns *= 3;
  std::vector<int> state(static_cast<std::size_t>(n));
  std::vector<int> free;
  for (int code = 0; code < patterns; ++code) {
    int c = code;
    free.clear();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      state[i] = c % 3;
      c /= 3;
      if (state[i] == 0) d[i] = sub.lo[i];
      if (state[i] == 1) d[i] = sub.hi[i];
      if (state[i] == 2) free.push_back(i);
    }
    const int f = static_cast<int>(free.size());
    double fixed_a = 0.0;
    for (int i = 0; i < n; ++i) {
      if (state[i] != 2) fixed_a += sub.a[i] * d[i];
    }
    double free_a = 0.0;
    for (int i : free) free_a = std::max(free_a, std::abs(sub.a[i]));

    if (f > 0) {
      Eigen::VectorXd rhs_g(f);
      Eigen::MatrixXd Wff(f, f);
      for (int u = 0; u < f; ++u) {
        double s = sub.g[free[u]];
        for (int i = 0; i < n; ++i) {
          if (state[i] != 2) s += W(free[u], i) * d[i];
        }
        rhs_g[u] = -s;
        for (int v = 0; v < f; ++v) Wff(u, v) = W(free[u], free[v]);
      }
      const bool with_equality = free_a > 1e-14 * std::max(a_norm, 1e-300);
      const int m = with_equality ? f + 1 : f;
      Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
      Eigen::VectorXd rhs(m);
      K.topLeftCorner(f, f) = Wff;
      rhs.head(f) = rhs_g;
      if (with_equality) {
        for (int u = 0; u < f; ++u) {
          K(u, f) = sub.a[free[u]];
          K(f, u) = sub.a[free[u]];
        }
        rhs[f] = -fixed_a;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd sol = lu.solve(rhs);
      if ((K * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-9 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) continue;
      for (int u = 0; u < f; ++u) d[free[u]] = sol[u];
    }
    bool feasible = std::abs(sub.a.dot(d)) <= 1e-10 * std::max(1.0, a_norm * d.norm());
    for (int i = 0; i < n && feasible; ++i) {
      feasible = d[i] >= sub.lo[i] - 1e-12 * scale && d[i] <= sub.hi[i] + 1e-12 * scale;
    }
    if (!feasible) continue;
    const double v = model_value(sub, d);
    if (v < best.value) {
      best.value = v;
      best.d = d;
    }
  }
  return best;
}

std::optional<double> closed_form_alpha(ClosedFormKind kind, int n, int k) {
  switch (kind) {
    case ClosedFormKind::complete:
      if (k < 3 || n < k) return std::nullopt;
      return binomial(n - 2, k - 2);
    case ClosedFormKind::single_edge: return 1.0;
  }
  return std::nullopt;
}

ChainQuarticForm::ChainQuarticForm(int l) : l_(l), squares_(l - 2) {
  if (l < 4 || l % 2 != 0) throw std::invalid_argument("chain quartic: l must be even and at least 4");
}

double ChainQuarticForm::value(const Eigen::VectorXd& y) const {
  double s = 0.0;
  for (int i = 0; i < squares_; ++i) s += ipow(y[i], 4);
  return s - adjacency_value(y);
}

double ChainQuarticForm::adjacency_value(const Eigen::VectorXd& y) const {
  double s = 0.0;
  for (int i = 0; i + 3 < l_; i += 2) s += y[i] * y[i + 1] * y[i + 2] * y[i + 3];
  return 4.0 * s;
}

Eigen::VectorXd ChainQuarticForm::gradient_contraction(const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(l_);
  for (int i = 0; i < squares_; ++i) out[i] = ipow(y[i], 3);
  for (int i = 0; i + 3 < l_; i += 2) {
    const double a = y[i], b = y[i + 1], c = y[i + 2], d = y[i + 3];
    out[i] -= b * c * d;
    out[i + 1] -= a * c * d;
    out[i + 2] -= a * b * d;
    out[i + 3] -= a * b * c;
  }
  return out;
}

SparseSymMatrix ChainQuarticForm::hessian_contraction(const Eigen::VectorXd& y) const {
  SparseSymMatrix out;
  out.dimension = l_;
  auto add = [&](int i, int j, double v) {
    out.rows.push_back(std::min(i, j));
    out.cols.push_back(std::max(i, j));
    out.values.push_back(v);
  };
  for (int i = 0; i < squares_; ++i) add(i, i, y[i] * y[i]);
  // Hessian of -4 y_a y_b y_c y_d at (a, b) is -4 y_c y_d; dividing by 4 * 3 gives -y_c y_d / 3.
  for (int i = 0; i + 3 < l_; i += 2) {
    const int idx[4] = {i, i + 1, i + 2, i + 3};
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        double prod = 1.0;
        for (int s = 0; s < 4; ++s) {
          if (s != p && s != q) prod *= y[idx[s]];
        }
        add(idx[p], idx[q], -prod / 3.0);
      }
    }
  }
  return out;
}

double beta_two_path(int l, const FTRConfig& cfg) {
  if (l < 4 || l > 40 || l % 2 != 0) throw std::invalid_argument("beta: l must be even in [4, 40]");
  ChainQuarticForm form(l);
  MultistartResult res = multistart(form, -1, cfg);
  double best = res.best.alpha_j;
  if (l <= 10) {
    const auto free = free_coordinates(l, -1);
    const Eigen::VectorXd polished = simplex_pattern_search(form, free, res.best.x, 1.0 / 80.0, 12);
    best = std::min(best, form.value(polished));
  }
  return best;
}

double upper_bound_vertex_cut(int n, int k, int v) {
  if (k < 2 || n <= k || v < 1 || v > n - k) {
    throw std::invalid_argument("upper bound: need 1 <= v <= n - k");
  }
  const double bracket = binomial(n - v - 1, k - 1) - binomial((n - v) / 2 - 1, k - 1);
  return binomial(n - 2, k - 2) - bracket * (k - 1) / (n - 1);
}

int edge_connectivity_small(const Hypergraph& h) {
  const int m = h.m(), n = h.n();
  if (m > kEdgeCutMaxEdges) {
    throw std::invalid_argument("edge connectivity: " + std::to_string(m) + " edges exceed the limit of " +
                                std::to_string(kEdgeCutMaxEdges));
  }
  if (!is_connected(h)) return 0;

  std::vector<int> parent(static_cast<std::size_t>(n));
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto connected_without = [&](const std::vector<char>& removed) {
    std::iota(parent.begin(), parent.end(), 0);
    int components = n;
    for (int e = 0; e < m; ++e) {
      if (removed[e]) continue;
      auto row = h.edge(e);
      const int r0 = find(row[0]);
      for (std::size_t t = 1; t < row.size(); ++t) {
        const int rt = find(row[t]);
        if (rt != r0) {
          parent[rt] = r0;
          --components;
        }
      }
    }
    return components == 1;
  };

  std::vector<char> removed(static_cast<std::size_t>(m));
  for (int size = 1; size <= m; ++size) {
    // Enumerate size-subsets in lexicographic order via a selection mask.
    std::vector<char> mask(static_cast<std::size_t>(m), 0);
    std::fill(mask.begin(), mask.begin() + size, 1);
    do {
      for (int e = 0; e < m; ++e) removed[e] = mask[e];
      if (!connected_without(removed)) return size;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return m;
}

}  // namespace hypercon
