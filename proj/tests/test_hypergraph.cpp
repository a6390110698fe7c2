#include <doctest.h>

#include <random>

#include "core/hypergraph.hpp"
#include "core/oracle.hpp"
#include "support.hpp"

using namespace hypercon;

namespace {

std::vector<std::vector<int>> rows_of(const Hypergraph& h) {
  std::vector<std::vector<int>> out;
  for (int e = 0; e < h.m(); ++e) {
    auto r = h.edge(e);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

// Reachability by repeatedly merging edges that share a vertex.
bool closure_connected(const Hypergraph& h) {
  if (h.n() <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(h.n()), 0);
  seen[0] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int e = 0; e < h.m(); ++e) {
      bool touches = false;
      for (int v : h.edge(e)) touches = touches || seen[v];
      if (!touches) continue;
      for (int v : h.edge(e)) {
        if (!seen[v]) {
          seen[v] = 1;
          grew = true;
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace

TEST_CASE("parse K4 minus an edge") {
  auto h = parse_hypergraph("3 4 3\n1 2 4\n1 3 4\n2 3 4");
  CHECK(h.n() == 4);
  CHECK(h.k() == 3);
  CHECK(rows_of(h) == std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

TEST_CASE("parse canonicalizes rows and row order") {
  auto a = parse_hypergraph("# comment\n3 5 2\n5 4 3\n3 1 2\n");
  auto b = parse_hypergraph("3 5 2\n1 2 3\n3 4 5\n");
  CHECK(a == b);
  CHECK(rows_of(a)[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_hypergraph("3 3 1\n1 1 2"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 3 1\n1 2 4"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 4 2\n1 2 3\n3 2 1"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("2 3 1\n1 2"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 3\n1 2 3"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph(""), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 4 2\n1 2 3"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 4 1\n1 2 3\n2 3 4"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 4 1\n1 2"), ParseError);
  CHECK_THROWS_AS(parse_hypergraph("3 4 1\n1 2 x"), ParseError);
}

TEST_CASE("parse error reports the line") {
  try {
    parse_hypergraph("3 4 2\n1 2 3\n1 1 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("single edge write format") {
  auto h = parse_hypergraph("3 3 1\n1 2 3");
  CHECK(write_hypergraph(h) == "3 3 1\n1 2 3\n");
}

TEST_CASE("write then parse round-trips") {
  for (const auto& h : {make_complete(5, 3), make_sunflower(4, 3), make_squid(4), make_s_path(5, 2, 3),
                        make_hypercycle(3, 5), make_complete_minus(7, 4)}) {
    CHECK(parse_hypergraph(write_hypergraph(h)) == h);
  }
}

TEST_CASE("degree profiles") {
  auto k4 = degrees(make_complete(4, 3));
  CHECK(k4.degrees == std::vector<int>{3, 3, 3, 3});

  auto sf = degrees(make_sunflower(3, 4));
  CHECK(sf.degrees[0] == 4);
  for (std::size_t v = 1; v < sf.degrees.size(); ++v) CHECK(sf.degrees[v] == 1);
  CHECK(sf.min_degree == 1);
  CHECK(sf.max_degree == 4);

  auto km = degrees(make_complete_minus(10, 3));
  for (int v = 0; v < 3; ++v) CHECK(km.degrees[v] == 35);
  for (int v = 3; v < 10; ++v) CHECK(km.degrees[v] == 36);
  int total = 0;
  for (int d : km.degrees) total += d;
  CHECK(total == 119 * 3);
}

TEST_CASE("connectivity examples") {
  CHECK(is_connected(make_loose_path(3, 2)));
  CHECK_FALSE(is_connected(parse_hypergraph("3 6 2\n1 2 3\n4 5 6")));
  for (int d = 1; d <= 5; ++d) CHECK(is_connected(make_sunflower(3, d)));
  CHECK_FALSE(is_connected(parse_hypergraph("3 4 1\n1 2 3")));  // vertex 4 isolated
}

TEST_CASE("is_connected agrees with edge closure on random instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 2);
    const int n = k + static_cast<int>(rng() % (11 - k));
    const int m = 1 + static_cast<int>(rng() % 5);
    auto h = testing::random_hypergraph(rng, n, k, m);
    CHECK(is_connected(h) == closure_connected(h));
  }
}

TEST_CASE("generator shapes") {
  SUBCASE("complete minus") {
    auto h = make_complete_minus(4, 3);
    CHECK(rows_of(h) == std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(make_complete_minus(10, 3).m() == 119);
    CHECK(make_complete_minus(8, 4).m() == static_cast<int>(binomial(8, 4)) - 1);
  }
  SUBCASE("2-path 4-graph on 10 vertices") {
    auto h = make_s_path(4, 2, 4);
    CHECK(h.n() == 10);
    CHECK(rows_of(h) ==
          std::vector<std::vector<int>>{{0, 1, 2, 3}, {2, 3, 4, 5}, {4, 5, 6, 7}, {6, 7, 8, 9}});
  }
  SUBCASE("squid") {
    auto h = make_squid(3);
    CHECK(h.n() == 7);
    CHECK(rows_of(h) == std::vector<std::vector<int>>{{0, 1, 2}, {0, 3, 6}, {3, 4, 5}});
  }
  SUBCASE("sunflower") {
    auto h = make_sunflower(3, 4);
    CHECK(h.n() == 9);
    CHECK(h.m() == 4);
  }
  SUBCASE("hypercycle") {
    auto h = make_hypercycle(3, 4);
    CHECK(h.n() == 8);
    auto d = degrees(h).degrees;
    CHECK(std::count(d.begin(), d.end(), 2) == 4);
    CHECK(std::count(d.begin(), d.end(), 1) == 4);
    CHECK_THROWS_AS(make_hypercycle(3, 2), HypergraphError);
  }
  SUBCASE("complete degrees") {
    auto d = degrees(make_complete(7, 3)).degrees;
    for (int v : d) CHECK(v == 15);
  }
  SUBCASE("loose path is the 1-path") { CHECK(make_loose_path(4, 3) == make_s_path(4, 1, 3)); }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(make_s_path(4, 4, 2), HypergraphError);
    CHECK_THROWS_AS(make_s_path(4, 0, 2), HypergraphError);
    CHECK_THROWS_AS(make_complete(2, 3), HypergraphError);
    CHECK_THROWS_AS(make_sunflower(3, 0), HypergraphError);
  }
}

TEST_CASE("generate dispatches on class names") {
  GeneratorSpec spec;
  spec.kind = graph_class_from_string("s-path");
  spec.k = 4;
  spec.overlap = 2;
  spec.length = 4;
  CHECK(generate(spec) == make_s_path(4, 2, 4));
  for (auto c : {GraphClass::sunflower, GraphClass::hypercycle, GraphClass::squid, GraphClass::s_path,
                 GraphClass::loose_path, GraphClass::complete, GraphClass::complete_minus}) {
    CHECK(graph_class_from_string(to_string(c)) == c);
  }
  CHECK_THROWS_AS(graph_class_from_string("wheel"), HypergraphError);
}
