#include "core/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hypercon {

namespace {

struct DisjointSet {
  explicit DisjointSet(int size) : parent(static_cast<std::size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

long long parse_integer(std::string_view token, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

// Calls visit(subset) for every r-subset of {0, ..., n-1} in lexicographic order.
template <class Visit>
void for_each_subset(int n, int r, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Hypergraph::Hypergraph(int n, int k, std::vector<std::vector<int>> edges) : n_(n), k_(k) {
  if (k < 3) throw HypergraphError("edge size k must be at least 3, got " + std::to_string(k));
  if (n < k) {
    throw HypergraphError("vertex count n=" + std::to_string(n) + " is smaller than edge size k=" +
                          std::to_string(k));
  }
  for (auto& row : edges) {
    if (static_cast<int>(row.size()) != k) {
      throw HypergraphError("edge has " + std::to_string(row.size()) + " vertices, expected " +
                            std::to_string(k));
    }
    std::sort(row.begin(), row.end());
    for (int v : row) {
      if (v < 0 || v >= n) {
        throw HypergraphError("vertex index " + std::to_string(v + 1) + " outside [1, " +
                              std::to_string(n) + "]");
      }
    }
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
      throw HypergraphError("edge repeats a vertex");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    std::string listing;
    for (int v : *dup) listing += (listing.empty() ? "" : " ") + std::to_string(v + 1);
    throw HypergraphError("duplicate edge {" + listing + "}");
  }

  edges_.reserve(edges.size() * static_cast<std::size_t>(k));
  for (const auto& row : edges) edges_.insert(edges_.end(), row.begin(), row.end());

  incidence_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v : edges_) ++incidence_offsets_[v + 1];
  std::partial_sum(incidence_offsets_.begin(), incidence_offsets_.end(), incidence_offsets_.begin());
  incidence_.resize(edges_.size());
  std::vector<int> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  const int edge_count = m();
  for (int e = 0; e < edge_count; ++e) {
    for (int v : edge(e)) incidence_[cursor[v]++] = e;
  }
}

DegreeProfile degrees(const Hypergraph& h) {
  DegreeProfile profile;
  profile.degrees.resize(static_cast<std::size_t>(h.n()));
  profile.incidence.resize(static_cast<std::size_t>(h.n()));
  for (int v = 0; v < h.n(); ++v) {
    auto inc = h.incident_edges(v);
    profile.degrees[v] = static_cast<int>(inc.size());
    profile.incidence[v].assign(inc.begin(), inc.end());
  }
  auto [lo, hi] = std::minmax_element(profile.degrees.begin(), profile.degrees.end());
  profile.min_degree = *lo;
  profile.max_degree = *hi;
  return profile;
}

bool is_connected(const Hypergraph& h) {
  if (h.m() == 0) return h.n() <= 1;
  DisjointSet sets(h.n());
  for (int e = 0; e < h.m(); ++e) {
    auto row = h.edge(e);
    for (int v : row.subspan(1)) sets.unite(row[0], v);
  }
  const int root = sets.find(0);
  for (int v = 1; v < h.n(); ++v) {
    if (sets.find(v) != root) return false;
  }
  return true;
}

Hypergraph parse_hypergraph(std::string_view text) {
  int line_no = 0;
  bool have_header = false;
  long long k = 0, n = 0, m = 0;
  std::vector<std::vector<int>> edges;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (line[first] == '#') continue;

    auto tokens = split_tokens(line);
    if (!have_header) {
      if (tokens.size() != 3) throw ParseError("malformed header, expected 'k n m'", line_no);
      k = parse_integer(tokens[0], line_no);
      n = parse_integer(tokens[1], line_no);
      m = parse_integer(tokens[2], line_no);
      if (k < 3) throw ParseError("edge size k must be at least 3, got " + std::to_string(k), line_no);
      if (n < k || n > 100000000) throw ParseError("invalid vertex count " + std::to_string(n), line_no);
      if (m < 0 || m > 100000000) throw ParseError("invalid edge count " + std::to_string(m), line_no);
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError("unexpected data after " + std::to_string(m) + " edges", line_no);
    }
    if (static_cast<long long>(tokens.size()) != k) {
      throw ParseError("edge has " + std::to_string(tokens.size()) + " indices, expected " +
                           std::to_string(k),
                       line_no);
    }
    std::vector<int> row;
    row.reserve(tokens.size());
    for (auto tok : tokens) {
      long long v = parse_integer(tok, line_no);
      if (v < 1 || v > n) {
        throw ParseError("vertex index " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]",
                         line_no);
      }
      row.push_back(static_cast<int>(v - 1));
    }
    std::vector<int> sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("edge repeats a vertex", line_no);
    }
    edges.push_back(std::move(row));
  }
  if (!have_header) throw ParseError("missing header 'k n m'", 0);
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()), 0);
  }
  try {
    return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges));
  } catch (const ParseError&) {
    throw;
  } catch (const HypergraphError& err) {
    throw ParseError(err.what(), 0);
  }
}

std::string write_hypergraph(const Hypergraph& h) {
  std::string out = std::to_string(h.k()) + " " + std::to_string(h.n()) + " " + std::to_string(h.m()) + "\n";
  for (int e = 0; e < h.m(); ++e) {
    bool first = true;
    for (int v : h.edge(e)) {
      if (!first) out += ' ';
      out += std::to_string(v + 1);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hypergraph(buffer.str());
}

void write_hypergraph_file(const Hypergraph& h, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << write_hypergraph(h);
}

Hypergraph make_sunflower(int k, int petals) {
  if (k < 3 || petals < 1) throw HypergraphError("sunflower needs k >= 3 and d >= 1");
  std::vector<std::vector<int>> edges;
  for (int p = 0; p < petals; ++p) {
    std::vector<int> row{0};
    for (int t = 0; t < k - 1; ++t) row.push_back(1 + p * (k - 1) + t);
    edges.push_back(std::move(row));
  }
  return Hypergraph(1 + petals * (k - 1), k, std::move(edges));
}

Hypergraph make_hypercycle(int k, int cycle_length) {
  // s >= 3 keeps the s pairwise intersections distinct.
  if (k < 3 || cycle_length < 3) throw HypergraphError("hypercycle needs k >= 3 and s >= 3");
  const int n = cycle_length * (k - 1);
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < cycle_length; ++i) {
    std::vector<int> row;
    for (int t = 0; t < k; ++t) row.push_back((i * (k - 1) + t) % n);
    edges.push_back(std::move(row));
  }
  return Hypergraph(n, k, std::move(edges));
}

Hypergraph make_squid(int k) {
  if (k < 3) throw HypergraphError("squid needs k >= 3");
  // Vertex i_{a,b} (1 <= a <= k-1, 1 <= b <= k) has id (a-1)k + (b-1);
  // the extra vertex i_{k,1} is last.
  const int n = (k - 1) * k + 1;
  std::vector<std::vector<int>> edges;
  std::vector<int> body;
  for (int a = 0; a < k - 1; ++a) {
    std::vector<int> row;
    for (int b = 0; b < k; ++b) row.push_back(a * k + b);
    body.push_back(a * k);
    edges.push_back(std::move(row));
  }
  body.push_back(n - 1);
  edges.push_back(std::move(body));
  return Hypergraph(n, k, std::move(edges));
}

Hypergraph make_s_path(int k, int overlap, int length) {
  if (k < 3 || overlap < 1 || overlap >= k || length < 1) {
    throw HypergraphError("s-path needs k >= 3, 1 <= s < k and length >= 1");
  }
  const int stride = k - overlap;
  const int n = overlap + length * stride;
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < length; ++i) {
    std::vector<int> row;
    for (int t = 0; t < k; ++t) row.push_back(i * stride + t);
    edges.push_back(std::move(row));
  }
  return Hypergraph(n, k, std::move(edges));
}

Hypergraph make_loose_path(int k, int length) { return make_s_path(k, 1, length); }

Hypergraph make_complete(int n, int k) {
  if (k < 3 || n < k) throw HypergraphError("complete k-graph needs k >= 3 and n >= k");
  if (binomial(n, k) > 50'000'000) throw HypergraphError("complete k-graph is too large");
  std::vector<std::vector<int>> edges;
  edges.reserve(static_cast<std::size_t>(binomial(n, k)));
  for_each_subset(n, k, [&](const std::vector<int>& s) { edges.push_back(s); });
  return Hypergraph(n, k, std::move(edges));
}

Hypergraph make_complete_minus(int n, int k) {
  if (k < 3 || n <= k) throw HypergraphError("complete-minus needs k >= 3 and n > k");
  if (binomial(n, k) > 50'000'000) throw HypergraphError("complete k-graph is too large");
  std::vector<std::vector<int>> edges;
  edges.reserve(static_cast<std::size_t>(binomial(n, k) - 1));
  bool first = true;
  // The lexicographically first subset is exactly {0, ..., k-1}.
  for_each_subset(n, k, [&](const std::vector<int>& s) {
    if (first) {
      first = false;
      return;
    }
    edges.push_back(s);
  });
  return Hypergraph(n, k, std::move(edges));
}

Hypergraph generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GraphClass::sunflower: return make_sunflower(spec.k, spec.petals);
    case GraphClass::hypercycle: return make_hypercycle(spec.k, spec.cycle_length);
    case GraphClass::squid: return make_squid(spec.k);
    case GraphClass::s_path: return make_s_path(spec.k, spec.overlap, spec.length);
    case GraphClass::loose_path: return make_loose_path(spec.k, spec.length);
    case GraphClass::complete: return make_complete(spec.n, spec.k);
    case GraphClass::complete_minus: return make_complete_minus(spec.n, spec.k);
  }
  throw HypergraphError("unknown hypergraph class");
}

const char* to_string(GraphClass kind) {
  switch (kind) {
    case GraphClass::sunflower: return "sunflower";
    case GraphClass::hypercycle: return "hypercycle";
    case GraphClass::squid: return "squid";
    case GraphClass::s_path: return "s-path";
    case GraphClass::loose_path: return "loose-path";
    case GraphClass::complete: return "complete";
    case GraphClass::complete_minus: return "complete-minus";
  }
  return "unknown";
}

GraphClass graph_class_from_string(std::string_view name) {
  for (auto kind : {GraphClass::sunflower, GraphClass::hypercycle, GraphClass::squid, GraphClass::s_path,
                    GraphClass::loose_path, GraphClass::complete, GraphClass::complete_minus}) {
    if (name == to_string(kind)) return kind;
  }
  throw HypergraphError("unknown hypergraph class '" + std::string(name) + "'");
}

}  // namespace hypercon
