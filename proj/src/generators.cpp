#include "dpt/generators.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "dpt/oracles.hpp"
#include "dpt/rng.hpp"

namespace dpt {

const FarnessCertificate* GeneratedInstance::certificate_for(const PropertyId& p) const {
  for (const auto& c : certificates) {
    if (c.property.kind() != p.kind()) continue;
    if (!p.is_subgraph_freeness()) return &c;
    // Same forbidden subgraph up to isomorphism.
    const auto& a = c.property.pattern();
    const auto& b = p.pattern();
    if (a.n() == b.n() && a.m() == b.m() && count_embeddings(a, b) > 0) return &c;
  }
  return nullptr;
}

GeneratedInstance gen_disjoint_copies(const Graph& pattern, std::size_t copies) {
  if (copies == 0) throw GraphError("copies must be positive");
  if (!is_connected(pattern) || pattern.n() == 0) throw GraphError("pattern must be connected");
  GeneratedInstance out;
  out.graph = disjoint_union(pattern, copies);

  std::vector<PropertyId> candidates = {PropertyId::triangle_free(), PropertyId::c4_free()};
  if (pattern.n() >= 2 && pattern.n() <= 4) candidates.push_back(PropertyId::h_free(pattern));
  if (pattern.n() >= 2 && pattern.m() + 1 == pattern.n()) {
    candidates.push_back(PropertyId::tree_free(TreePattern::from_graph(pattern)));
  }
  candidates.push_back(PropertyId::bipartite());
  candidates.push_back(PropertyId::cycle_free());

  for (auto& prop : candidates) {
    std::size_t per_copy = 0;
    try {
      per_copy = dist_to_property(pattern, prop);
    } catch (const GuardError&) {
      continue;
    }
    if (per_copy == 0) continue;
    const auto distance = per_copy * copies;
    out.certificates.push_back(
        {prop, Rational(static_cast<std::int64_t>(distance), static_cast<std::int64_t>(out.graph.m())), distance});
  }
  return out;
}

namespace {

class AdjacencySets {
 public:
  explicit AdjacencySets(std::size_t n) : adj_(n) {}
  bool has(VertexId a, VertexId b) const { return adj_[a].count(b) > 0; }
  void add(VertexId a, VertexId b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  std::size_t degree(VertexId v) const { return adj_[v].size(); }
  const std::set<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  Graph build() const {
    std::vector<Edge> e;
    for (VertexId a = 0; a < adj_.size(); ++a)
      for (auto b : adj_[a])
        if (a < b) e.push_back({a, b});
    return Graph::from_edges(adj_.size(), e);
  }

 private:
  std::vector<std::set<VertexId>> adj_;
};

Graph random_bipartite(std::size_t n, std::uint64_t seed, bool forbid_c4) {
  RandomStream rng(mix64(seed ^ 0xb1ULL));
  std::vector<char> side(n);
  for (auto& s : side) s = static_cast<char>(rng.below(2));
  AdjacencySets adj(n);
  const std::size_t attempts = 3 * n;
  for (std::size_t i = 0; i < attempts && n >= 2; ++i) {
    auto a = static_cast<VertexId>(rng.below(n));
    auto b = static_cast<VertexId>(rng.below(n));
    if (a == b || side[a] == side[b] || adj.has(a, b)) continue;
    if (forbid_c4) {
      // Adding a-b closes a 4-cycle iff some x in N(a), y in N(x) is adjacent to b.
      bool closes = false;
      for (auto x : adj.neighbors(a)) {
        for (auto y : adj.neighbors(x)) {
          if (y != a && adj.has(y, b)) {
            closes = true;
            break;
          }
        }
        if (closes) break;
      }
      if (closes) continue;
    }
    adj.add(a, b);
  }
  return adj.build();
}

Graph random_forest(std::size_t n, std::uint64_t seed) {
  RandomStream rng(mix64(seed ^ 0xf0ULL));
  std::vector<Edge> e;
  for (std::size_t v = 1; v < n; ++v) {
    if (rng.coin(0.9)) e.push_back({static_cast<VertexId>(rng.below(v)), static_cast<VertexId>(v)});
  }
  return Graph::from_edges(n, e);
}

Graph random_tree_free(const TreePattern& tree, std::size_t n, std::uint64_t seed) {
  RandomStream rng(mix64(seed ^ 0x7eeULL));
  if (tree.is_star()) {
    // Maximum degree below the star's leaf count.
    const std::size_t cap = tree.k() - 2;
    AdjacencySets adj(n);
    if (cap == 0 || n < 2) return adj.build();
    for (std::size_t i = 0; i < 2 * n; ++i) {
      auto a = static_cast<VertexId>(rng.below(n));
      auto b = static_cast<VertexId>(rng.below(n));
      if (a == b || adj.has(a, b) || adj.degree(a) >= cap || adj.degree(b) >= cap) continue;
      adj.add(a, b);
    }
    return adj.build();
  }
  // Not a star: disjoint stars never contain it.
  std::vector<Edge> e;
  std::size_t v = 0;
  while (v < n) {
    const auto size = std::min<std::size_t>(n - v, 1 + rng.below(8));
    for (std::size_t leaf = 1; leaf < size; ++leaf) {
      e.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v + leaf)});
    }
    v += size;
  }
  return Graph::from_edges(n, e);
}

}  // namespace

Graph gen_property_instance(const PropertyId& property, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw GraphError("n must be positive");
  Graph g;
  switch (property.kind()) {
    case PropertyKind::Bipartite:
      g = random_bipartite(n, seed, false);
      break;
    case PropertyKind::CycleFree:
      g = random_forest(n, seed);
      break;
    case PropertyKind::TriangleFree:
    case PropertyKind::C4Free:
      g = random_bipartite(n, seed, true);
      break;
    case PropertyKind::HFree: {
      const auto& h = property.pattern();
      if (h.m() + 1 == h.n()) {
        g = random_tree_free(TreePattern::from_graph(h), n, seed);
      } else {
        g = random_bipartite(n, seed, true);
      }
      break;
    }
    case PropertyKind::TreeFree:
      g = random_tree_free(property.tree(), n, seed);
      break;
  }
  const bool ok = [&] {
    switch (property.kind()) {
      case PropertyKind::Bipartite: return is_bipartite(g);
      case PropertyKind::CycleFree: return is_forest(g.n(), g.edges());
      default: return !find_copy(g, property.pattern()).has_value();
    }
  }();
  if (!ok) throw std::logic_error("generated instance violates " + property.name());
  return g;
}

Graph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw GraphError("gnm: too many edges");
  if (m > n * (n - 1) / 2) throw GraphError("gnm: too many edges");
  RandomStream rng(mix64(seed ^ 0x6e6dULL));
  std::set<Edge> edges;
  while (edges.size() < m) {
    auto a = static_cast<VertexId>(rng.below(n));
    auto b = static_cast<VertexId>(rng.below(n));
    if (a != b) edges.insert(Edge::normalized(a, b));
  }
  std::vector<Edge> e(edges.begin(), edges.end());
  return Graph::from_edges(n, e);
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  RandomStream rng(mix64(seed ^ 0x6e70ULL));
  std::vector<Edge> e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng.coin(p)) e.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  return Graph::from_edges(n, e);
}

void write_certificates(std::ostream& out, const GeneratedInstance& inst) {
  out << "{\n";
  out << "  n: " << inst.graph.n() << "\n";
  out << "  m: " << inst.graph.m() << "\n";
  for (const auto& c : inst.certificates) {
    out << "  " << c.property.name() << ": {distance: " << c.distance << ", epsilon: " << c.epsilon.str() << "}\n";
  }
  out << "}\n";
}

}  // namespace dpt
