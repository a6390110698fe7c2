#include "core/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hypercon {

bool incidence_subset(const Hypergraph& h, int i, int j) {
  auto a = h.incident_edges(i);
  auto b = h.incident_edges(j);
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

CandidateSet dominance_prune(const Hypergraph& h) {
  CandidateSet out;
  out.strategy = Strategy::dominance;
  const int n = h.n();
  for (int j = 0; j < n; ++j) {
    bool dominated = false;
    for (int i = 0; i < n && !dominated; ++i) {
      if (i == j || h.degree(i) > h.degree(j)) continue;
      if (!incidence_subset(h, i, j)) continue;
      // Strict inclusion always removes j; equal sets keep the smallest index.
      dominated = h.degree(i) < h.degree(j) || i < j;
    }
    if (!dominated) out.vertices.push_back(j);
  }
  return out;
}

CandidateSet candidate_vertices(const Hypergraph& h, Strategy strategy) {
  switch (strategy) {
    case Strategy::all: {
      CandidateSet out;
      out.strategy = Strategy::all;
      out.vertices.resize(static_cast<std::size_t>(h.n()));
      std::iota(out.vertices.begin(), out.vertices.end(), 0);
      return out;
    }
    case Strategy::dominance: return dominance_prune(h);
    case Strategy::min_degree: {
      CandidateSet out;
      out.strategy = Strategy::min_degree;
      int delta = h.degree(0);
      for (int v = 1; v < h.n(); ++v) delta = std::min(delta, h.degree(v));
      for (int v = 0; v < h.n(); ++v) {
        if (h.degree(v) == delta) out.vertices.push_back(v);
      }
      return out;
    }
  }
  throw HypergraphError("unknown candidate strategy");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::all: return "all";
    case Strategy::dominance: return "dominance";
    case Strategy::min_degree: return "min-degree";
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "all") return Strategy::all;
  if (name == "dominance") return Strategy::dominance;
  if (name == "min-degree" || name == "min_degree") return Strategy::min_degree;
  throw HypergraphError("unknown strategy '" + std::string(name) + "'");
}

}  // namespace hypercon
