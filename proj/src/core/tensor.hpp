#ifndef HYPERCON_CORE_TENSOR_HPP
#define HYPERCON_CORE_TENSOR_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "core/hypergraph.hpp"

namespace hypercon {

/// Nonnegative point with one coordinate held at zero.
struct PinnedPoint {
  Eigen::VectorXd x;
  int pinned = -1;  ///< -1 when no coordinate is pinned
};

/// Symmetric matrix in coordinate form; only i <= j is stored.
struct SparseSymMatrix {
  int dimension = 0;
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<double> values;

  std::size_t nonzeros() const noexcept { return values.size(); }
  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const;
  double quadratic_form(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd to_dense() const;
};

/// A homogeneous form F of degree k in n variables, seen through the
/// contractions used by the solver:
///   value(x)                = F(x)                      (T x^k)
///   gradient_contraction(x) = grad F(x) / k             (T x^{k-1})
///   hessian_contraction(x)  = hess F(x) / (k (k - 1))   (T x^{k-2})
class HomogeneousForm {
 public:
  virtual ~HomogeneousForm() = default;
  virtual int dimension() const = 0;
  virtual int degree() const = 0;
  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient_contraction(const Eigen::VectorXd& x) const = 0;
  virtual SparseSymMatrix hessian_contraction(const Eigen::VectorXd& x) const = 0;
  /// The off-diagonal (adjacency) part A x^k of the form.
  virtual double adjacency_value(const Eigen::VectorXd& x) const = 0;
};

/// Laplacian tensor L = D - A of a k-uniform hypergraph, evaluated by
/// streaming over the compact edge matrix. The sparsity pattern of L x^{k-2}
/// and the slot of every edge pair in it are computed once at construction.
class LaplacianForm final : public HomogeneousForm {
 public:
  explicit LaplacianForm(const Hypergraph& h);

  int dimension() const override { return graph_->n(); }
  int degree() const override { return graph_->k(); }
  double value(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd gradient_contraction(const Eigen::VectorXd& x) const override;
  SparseSymMatrix hessian_contraction(const Eigen::VectorXd& x) const override;
  double adjacency_value(const Eigen::VectorXd& x) const override;

  const Hypergraph& graph() const noexcept { return *graph_; }
  /// Structural nonzeros of L x^{k-2} (upper triangle incl. diagonal).
  std::size_t pattern_size() const noexcept { return pattern_rows_.size(); }

 private:
  const Hypergraph* graph_;
  std::vector<int> pattern_rows_;
  std::vector<int> pattern_cols_;
  std::vector<int> diagonal_slot_;  // per vertex, -1 when isolated
  std::vector<int> pair_slots_;     // per edge, k(k-1)/2 slots in (a < b) order
};

double lap_value(const Hypergraph& h, const Eigen::VectorXd& x);
Eigen::VectorXd lap_grad(const Hypergraph& h, const Eigen::VectorXd& x);
SparseSymMatrix lap_hess(const Hypergraph& h, const Eigen::VectorXd& x);

/// Reduced Lagrangian pieces at x for multiplier lambda, over the free
/// coordinates only (in the order given):
///   g = T x^{k-1} - lambda x^[k-1]
///   W = (k - 1) (T x^{k-2} - lambda diag(x^[k-2]))
struct LagrangianParts {
  Eigen::VectorXd g;
  SparseSymMatrix W;
};

LagrangianParts lagrangian_parts(const HomogeneousForm& form, const Eigen::VectorXd& x,
                                 std::span<const int> free, double lambda);
LagrangianParts lagrangian_parts(const Hypergraph& h, const PinnedPoint& p, double lambda);

/// All coordinates except `pinned` (which may be -1).
std::vector<int> free_coordinates(int n, int pinned);

double ipow(double base, int exponent);

}  // namespace hypercon

#endif  // HYPERCON_CORE_TENSOR_HPP
