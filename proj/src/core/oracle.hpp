#ifndef HYPERCON_CORE_ORACLE_HPP
#define HYPERCON_CORE_ORACLE_HPP

#include <optional>
#include <span>

#include <Eigen/Core>

#include "core/ftr.hpp"
#include "core/hypergraph.hpp"
#include "core/subproblem.hpp"
#include "core/tensor.hpp"

namespace hypercon {

struct GridSpec {
  int depth = 40;
  int refine_rounds = 3;
};

/// Largest number of free coordinates accepted by the grid oracle.
inline constexpr int kGridMaxFree = 12;

/// Exhaustive grid over t = x^[k] on the unit simplex of the coordinates
/// other than j, with resolution 1/depth, followed by refine_rounds of local
/// pattern search at step 1/(depth 2^r). Returns an upper bound on alpha_j.
/// Throws std::invalid_argument when n - 1 exceeds kGridMaxFree.
double grid_alpha_j(const Hypergraph& h, int j, const GridSpec& spec);

/// min over all j of grid_alpha_j.
double grid_alpha(const Hypergraph& h, const GridSpec& spec);

/// Pairwise mass-transfer search on the simplex t = x^[k] restricted to
/// `free`, starting from the feasible x. Each round halves the step, starting
/// at `step`. Returns the improved point.
Eigen::VectorXd simplex_pattern_search(const HomogeneousForm& form, std::span<const int> free,
                                       Eigen::VectorXd x, double step, int rounds);

struct QPOracleResult {
  double value = 0.0;
  Eigen::VectorXd d;
};

inline constexpr int kQPOracleMaxDimension = 6;

/// Global minimum of a trust-region subproblem by enumerating all 3^N
/// lower/upper/free patterns and solving each face's KKT system.
QPOracleResult qp_enum_oracle(const TRSubproblem& sub);

enum class ClosedFormKind { complete, single_edge };

/// complete: C(n-2, k-2); single_edge: 1.
std::optional<double> closed_form_alpha(ClosedFormKind kind, int n, int k);

double binomial(int a, int b);

/// Quartic chain
///   q(y) = sum_{i<=l-2} y_i^4 - 4 sum_{i odd, i<=l-3} y_i y_{i+1} y_{i+2} y_{i+3}
/// (1-based indices) as a homogeneous form of degree 4 in l variables.
class ChainQuarticForm final : public HomogeneousForm {
 public:
  explicit ChainQuarticForm(int l);
  int dimension() const override { return l_; }
  int degree() const override { return 4; }
  double value(const Eigen::VectorXd& y) const override;
  Eigen::VectorXd gradient_contraction(const Eigen::VectorXd& y) const override;
  SparseSymMatrix hessian_contraction(const Eigen::VectorXd& y) const override;
  double adjacency_value(const Eigen::VectorXd& y) const override;

 private:
  int l_;
  int squares_;  // number of leading coordinates carrying y^4
};

/// min q(y) over y >= 0 with sum y^4 = 1. Every product term has a negative
/// coefficient, so flipping signs of an unrestricted minimizer to their
/// absolute values never raises q; restricting to y >= 0 loses nothing.
/// Requires even l in [4, 40].
double beta_two_path(int l, const FTRConfig& cfg);

/// C(n-2,k-2) - [C(n-v-1,k-1) - C(floor((n-v)/2)-1,k-1)] (k-1)/(n-1),
/// requires 1 <= v <= n - k.
double upper_bound_vertex_cut(int n, int k, int v);

inline constexpr int kEdgeCutMaxEdges = 20;

/// Smallest number of edges whose removal disconnects h (0 if already
/// disconnected). Throws std::invalid_argument for m > kEdgeCutMaxEdges.
int edge_connectivity_small(const Hypergraph& h);

}  // namespace hypercon

#endif  // HYPERCON_CORE_ORACLE_HPP
