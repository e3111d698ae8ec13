#include "dpt/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>

namespace dpt {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> input) {
  Graph g(n);
  g.edges_.reserve(input.size());
  for (const auto& e : input) {
    if (e.u >= n || e.v >= n) {
      throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    g.edges_.push_back(Edge::normalized(e.u, e.v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end()); dup != g.edges_.end()) {
    throw GraphError("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
  }
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]++] = e.v;
    g.adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool Graph::has_edge(VertexId a, VertexId b) const {
  if (a >= n() || b >= n()) return false;
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t Graph::port_of(VertexId a, VertexId b) const {
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  return (it != nb.end() && *it == b) ? static_cast<std::size_t>(it - nb.begin()) : nb.size();
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (VertexId v = 0; v < n(); ++v) best = std::max(best, degree(v));
  return best;
}

namespace {

bool read_uint(std::string_view tok, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok.size() != 2) throw ParseError(line_no, "expected two integers");
    std::uint64_t a = 0, b = 0;
    if (!read_uint(tok[0], a) || !read_uint(tok[1], b)) throw ParseError(line_no, "expected two integers");
    if (!have_header) {
      n = a;
      m = b;
      if (n > std::uint64_t{1} << 31) throw ParseError(line_no, "vertex count too large");
      have_header = true;
    } else {
      if (a >= n || b >= n) throw ParseError(line_no, "vertex id out of range");
      if (a == b) throw ParseError(line_no, "self-loop");
      edges.push_back(Edge::normalized(static_cast<VertexId>(a), static_cast<VertexId>(b)));
      edge_line.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(1, "missing header line 'n m'");
  if (edges.size() != m) {
    throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  // Report the line of the second occurrence of a duplicate.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return edges[x] < edges[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) throw ParseError(edge_line[order[i]], "duplicate edge");
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph load_edge_list(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_edge_list(text);
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Components connected_components(const Graph& g) {
  Components c;
  c.label.assign(g.n(), static_cast<std::size_t>(-1));
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (c.label[s] != static_cast<std::size_t>(-1)) continue;
    c.label[s] = c.count;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : g.neighbors(v)) {
        if (c.label[w] == static_cast<std::size_t>(-1)) {
          c.label[w] = c.count;
          stack.push_back(w);
        }
      }
    }
    ++c.count;
  }
  return c;
}

bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

InducedSubgraph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  InducedSubgraph out;
  out.original.assign(vertices.begin(), vertices.end());
  std::sort(out.original.begin(), out.original.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < out.original.size(); ++i) {
    for (auto w : g.neighbors(out.original[i])) {
      auto it = std::lower_bound(out.original.begin(), out.original.end(), w);
      if (it != out.original.end() && *it == w) {
        auto j = static_cast<std::size_t>(it - out.original.begin());
        if (i < j) edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
      }
    }
  }
  out.graph = Graph::from_edges(out.original.size(), edges);
  return out;
}

Graph disjoint_union(std::span<const Graph> parts) {
  std::vector<Edge> edges;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (const auto& e : p.edges()) {
      edges.push_back({static_cast<VertexId>(e.u + offset), static_cast<VertexId>(e.v + offset)});
    }
    offset += p.n();
  }
  return Graph::from_edges(offset, edges);
}

Graph disjoint_union(const Graph& pattern, std::size_t copies) {
  std::vector<Graph> parts(copies, pattern);
  return disjoint_union(parts);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
  return Graph::from_edges(n, e);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Edge::normalized(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n)));
  return Graph::from_edges(n, e);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, static_cast<VertexId>(i)});
  return Graph::from_edges(leaves + 1, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});
  return Graph::from_edges(n, e);
}

Graph named_pattern(std::string_view alias) {
  if (alias == "k2" || alias == "edge") return complete_graph(2);
  if (alias == "p3") return path_graph(3);
  if (alias == "triangle" || alias == "k3") return complete_graph(3);
  if (alias == "c4") return cycle_graph(4);
  if (alias == "k4") return complete_graph(4);
  if (alias == "p4") return path_graph(4);
  if (alias == "k13" || alias == "claw") return star_graph(3);
  if (alias == "paw") {
    const Edge e[] = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
    return Graph::from_edges(4, e);
  }
  if (alias == "diamond") {
    const Edge e[] = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
    return Graph::from_edges(4, e);
  }
  throw GraphError("unknown pattern alias '" + std::string(alias) + "'");
}

}  // namespace dpt
