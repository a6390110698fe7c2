#include <doctest.h>

#include <random>

#include "core/ftr.hpp"
#include "core/reduction.hpp"
#include "support.hpp"

using namespace hypercon;

namespace {

FTRConfig quick_config(int restarts = 8) {
  FTRConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 11;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("dominance removes the sunflower center") {
  auto c = dominance_prune(make_sunflower(3, 3));
  CHECK(std::find(c.vertices.begin(), c.vertices.end(), 0) == c.vertices.end());
  CHECK_FALSE(c.vertices.empty());
}

TEST_CASE("dominance removes the squid's degree-2 vertices") {
  auto h = make_squid(3);
  auto c = dominance_prune(h);
  for (int v : c.vertices) CHECK(h.degree(v) == 1);
}

TEST_CASE("complete graphs keep every vertex") {
  auto c = dominance_prune(make_complete(5, 3));
  CHECK(c.vertices == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("candidate strategies") {
  auto lp = make_loose_path(3, 3);
  auto md = candidate_vertices(lp, Strategy::min_degree);
  for (int v = 0; v < lp.n(); ++v) {
    const bool listed = std::find(md.vertices.begin(), md.vertices.end(), v) != md.vertices.end();
    CHECK(listed == (lp.degree(v) == 1));
  }
  CHECK(candidate_vertices(make_complete_minus(10, 3), Strategy::min_degree).vertices == std::vector<int>{0, 1, 2});
  auto all = candidate_vertices(lp, Strategy::all);
  CHECK(all.vertices.size() == static_cast<std::size_t>(lp.n()));
  CHECK(strategy_from_string("min-degree") == Strategy::min_degree);
  CHECK(std::string(to_string(Strategy::dominance)) == "dominance");
  CHECK_THROWS(strategy_from_string("random"));
}

TEST_CASE("every pruned vertex is dominated by a kept one") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 2);
    auto h = testing::random_hypergraph(rng, k + 1 + static_cast<int>(rng() % 6), k, 1 + static_cast<int>(rng() % 6));
    auto kept = dominance_prune(h).vertices;
    REQUIRE_FALSE(kept.empty());
    for (int j = 0; j < h.n(); ++j) {
      if (std::find(kept.begin(), kept.end(), j) != kept.end()) continue;
      bool witnessed = false;
      for (int i : kept) witnessed = witnessed || (i != j && incidence_subset(h, i, j));
      CHECK(witnessed);
    }
  }
}

TEST_CASE("dominance and all strategies agree on small instances") {
  std::mt19937_64 rng(5);
  const FTRConfig cfg = quick_config();
  for (int trial = 0; trial < 12; ++trial) {
    auto h = testing::random_connected(rng, 8, 3);
    const double a_all = compute_alpha(h, cfg, Strategy::all).alpha;
    const double a_dom = compute_alpha(h, cfg, Strategy::dominance).alpha;
    CHECK(std::abs(a_dom - a_all) <= 1e-6);
  }
}

TEST_CASE("subset incidence orders alpha_j") {
  std::mt19937_64 rng(9);
  const FTRConfig cfg = quick_config();
  for (int trial = 0; trial < 8; ++trial) {
    auto h = testing::random_connected(rng, 8, 3);
    auto res = compute_alpha(h, cfg, Strategy::all);
    for (int i = 0; i < h.n(); ++i) {
      for (int j = 0; j < h.n(); ++j) {
        if (i != j && incidence_subset(h, i, j)) {
          CHECK(res.per_vertex[i].alpha_j <= res.per_vertex[j].alpha_j + 1e-6);
        }
      }
    }
  }
}

TEST_CASE("min-degree is exact on the structured classes") {
  const FTRConfig cfg = quick_config();
  for (const auto& h : {make_sunflower(3, 3), make_hypercycle(3, 4), make_squid(3), make_loose_path(3, 3)}) {
    const double a_all = compute_alpha(h, cfg, Strategy::all).alpha;
    const double a_min = compute_alpha(h, cfg, Strategy::min_degree).alpha;
    CHECK(std::abs(a_all - a_min) <= 1e-6);
  }
}

TEST_CASE("min-degree matches the full minimum on short 2-paths") {
  const FTRConfig cfg = quick_config(20);
  for (int length = 2; length <= 4; ++length) {
    auto h = make_s_path(4, 2, length);
    const double a_all = compute_alpha(h, cfg, Strategy::all).alpha;
    const double a_dom = compute_alpha(h, cfg, Strategy::dominance).alpha;
    const double a_min = compute_alpha(h, cfg, Strategy::min_degree).alpha;
    CHECK(std::abs(a_all - a_min) <= 1e-6);
    CHECK(std::abs(a_all - a_dom) <= 1e-6);
  }
}
