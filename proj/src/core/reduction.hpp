#ifndef HYPERCON_CORE_REDUCTION_HPP
#define HYPERCON_CORE_REDUCTION_HPP

#include <string_view>
#include <vector>

#include "core/hypergraph.hpp"

namespace hypercon {

/// Which vertices the outer minimum over pinned vertices visits.
enum class Strategy {
  all,         ///< every vertex
  dominance,   ///< drop j when some kept i has E(i) a subset of E(j); always sound
  min_degree,  ///< vertices of minimum degree only; exact for some classes, heuristic otherwise
};

struct CandidateSet {
  std::vector<int> vertices;  ///< ascending, 0-based
  Strategy strategy = Strategy::all;
};

/// Keeps the inclusion-minimal incidence sets, one representative (smallest
/// index) per group of vertices with identical incidence sets.
CandidateSet dominance_prune(const Hypergraph& h);

CandidateSet candidate_vertices(const Hypergraph& h, Strategy strategy);

/// True iff E(i) is a subset of E(j).
bool incidence_subset(const Hypergraph& h, int i, int j);

const char* to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

}  // namespace hypercon

#endif  // HYPERCON_CORE_REDUCTION_HPP
