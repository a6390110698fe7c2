#ifndef HYPERCON_CORE_HYPERGRAPH_HPP
#define HYPERCON_CORE_HYPERGRAPH_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypercon {

/// Raised for structurally invalid hypergraphs and generator parameters.
class HypergraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a file cannot be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text reader; carries the offending line when known.
class ParseError : public HypergraphError {
 public:
  ParseError(const std::string& what, int line)
      : HypergraphError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A k-uniform hypergraph stored as a compact m x k edge matrix.
///
/// Vertices are 0-based. Every row is sorted ascending and rows are kept in
/// lexicographic order, so two hypergraphs with the same edge set compare
/// equal. Incidence lists are built once at construction; the object is
/// immutable afterwards.
class Hypergraph {
 public:
  /// Validates and canonicalizes `edges` (0-based vertex ids). Throws
  /// HypergraphError on out-of-range ids, repeated vertices within an edge,
  /// duplicate edges, k < 3 or n < k.
  Hypergraph(int n, int k, std::vector<std::vector<int>> edges);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int m() const noexcept { return static_cast<int>(edges_.size()) / k_; }

  std::span<const int> edge(int e) const {
    return {edges_.data() + static_cast<std::size_t>(e) * k_, static_cast<std::size_t>(k_)};
  }
  /// Row-major m x k edge matrix.
  std::span<const int> edge_matrix() const noexcept { return edges_; }

  /// Edge indices containing vertex v, ascending.
  std::span<const int> incident_edges(int v) const {
    return {incidence_.data() + incidence_offsets_[v],
            static_cast<std::size_t>(incidence_offsets_[v + 1] - incidence_offsets_[v])};
  }
  int degree(int v) const { return incidence_offsets_[v + 1] - incidence_offsets_[v]; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  int k_;
  std::vector<int> edges_;
  std::vector<int> incidence_offsets_;
  std::vector<int> incidence_;
};

struct DegreeProfile {
  std::vector<int> degrees;
  int min_degree = 0;
  int max_degree = 0;
  /// E(i) for every vertex, as ascending edge indices.
  std::vector<std::vector<int>> incidence;
};

DegreeProfile degrees(const Hypergraph& h);

/// True iff the vertex/edge incidence graph is connected over all n vertices.
/// Isolated vertices make the hypergraph disconnected.
bool is_connected(const Hypergraph& h);

/// Reads the text format: optional '#' comment lines, a header "k n m", then
/// m rows of k 1-based vertex indices.
Hypergraph parse_hypergraph(std::string_view text);

/// Writes the canonical text form; parse_hypergraph(write_hypergraph(h)) == h.
std::string write_hypergraph(const Hypergraph& h);

Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const Hypergraph& h, const std::string& path);

enum class GraphClass {
  sunflower,
  hypercycle,
  squid,
  s_path,
  loose_path,
  complete,
  complete_minus,
};

/// Parameters for generate(). Only the fields used by `kind` are read:
/// sunflower uses `petals`, hypercycle uses `cycle_length`, s_path uses
/// `overlap` and `length`, loose_path uses `length`, complete and
/// complete_minus use `n`.
struct GeneratorSpec {
  GraphClass kind = GraphClass::complete;
  int k = 3;
  int n = 0;
  int petals = 0;
  int cycle_length = 0;
  int overlap = 0;
  int length = 0;
};

Hypergraph generate(const GeneratorSpec& spec);

Hypergraph make_sunflower(int k, int petals);
Hypergraph make_hypercycle(int k, int cycle_length);
Hypergraph make_squid(int k);
Hypergraph make_s_path(int k, int overlap, int length);
Hypergraph make_loose_path(int k, int length);
Hypergraph make_complete(int n, int k);
/// Complete k-graph on n vertices with the edge {1, ..., k} removed.
Hypergraph make_complete_minus(int n, int k);

const char* to_string(GraphClass kind);
GraphClass graph_class_from_string(std::string_view name);

}  // namespace hypercon

#endif  // HYPERCON_CORE_HYPERGRAPH_HPP
