#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpt {

using VertexId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge normalized(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Simple undirected graph in compressed adjacency form. Neighbour lists are
/// sorted by id, which fixes port numbering and makes runs reproducible.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

  /// Validates: endpoints in range, no self-loops, no duplicate edges.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  [[nodiscard]] std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t m() const { return edges_.size(); }
  [[nodiscard]] std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }
  /// Sorted edge list.
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] bool has_edge(VertexId a, VertexId b) const;
  /// Position of `b` in N(a), or degree(a) when absent.
  [[nodiscard]] std::size_t port_of(VertexId a, VertexId b) const;
  /// Offset of vertex v's first port in the flat adjacency array.
  [[nodiscard]] std::size_t slot_base(VertexId v) const { return offsets_[v]; }
  [[nodiscard]] std::size_t max_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n() == b.n() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<Edge> edges_;
};

/// Parses the edge-list format: header "n m", then m lines "u v".
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Connected-component label per vertex (labels are 0..count-1 in order of
/// smallest vertex) and the component count.
struct Components {
  std::vector<std::size_t> label;
  std::size_t count = 0;
};
Components connected_components(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<VertexId> original;  // local id -> id in the parent graph
};
InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

Graph disjoint_union(const Graph& pattern, std::size_t copies);
Graph disjoint_union(std::span<const Graph> parts);
[[nodiscard]] bool is_connected(const Graph& g);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);

/// Small patterns by name: k2, p3, triangle (k3), c4, k4, p4, paw, diamond,
/// k13 (claw).
Graph named_pattern(std::string_view alias);

}  // namespace dpt
