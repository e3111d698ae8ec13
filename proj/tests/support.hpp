#pragma once

// Test-side brute-force oracles, written independently of the library's.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "dpt/graph.hpp"

namespace testing {

using dpt::Edge;
using dpt::Graph;
using dpt::VertexId;

inline std::vector<std::vector<char>> adjacency_matrix(const Graph& g) {
  std::vector<std::vector<char>> a(g.n(), std::vector<char>(g.n(), 0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

inline Graph subgraph_without(const Graph& g, std::uint64_t removed_mask) {
  std::vector<Edge> keep;
  for (std::size_t i = 0; i < g.m(); ++i)
    if (!(removed_mask >> i & 1)) keep.push_back(g.edges()[i]);
  return Graph::from_edges(g.n(), keep);
}

// Exists an injective map h -> g preserving h's edges (tries every ordered
// tuple of distinct vertices).
inline bool naive_contains(const Graph& g, const Graph& h) {
  if (h.n() > g.n()) return false;
  const auto a = adjacency_matrix(g);
  std::vector<VertexId> pick(h.n());
  std::vector<char> used(g.n(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == h.n()) {
      for (const auto& e : h.edges())
        if (!a[pick[e.u]][pick[e.v]]) return false;
      return true;
    }
    for (VertexId v = 0; v < g.n(); ++v) {
      if (used[v]) continue;
      used[v] = 1;
      pick[i] = v;
      const bool ok = go(i + 1);
      used[v] = 0;
      if (ok) return true;
    }
    return false;
  };
  return go(0);
}

inline bool naive_is_bipartite(const Graph& g) {
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << g.n()); ++c) {
    bool ok = true;
    for (const auto& e : g.edges()) ok = ok && ((c >> e.u & 1) != (c >> e.v & 1));
    if (ok) return true;
  }
  return g.n() == 0;
}

inline bool naive_is_acyclic(const Graph& g) {
  // A graph is a forest iff every nonempty edge subset has a vertex of degree 1.
  std::vector<std::size_t> deg(g.n());
  std::vector<char> alive(g.m(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(deg.begin(), deg.end(), 0);
    for (std::size_t i = 0; i < g.m(); ++i)
      if (alive[i]) ++deg[g.edges()[i].u], ++deg[g.edges()[i].v];
    for (std::size_t i = 0; i < g.m(); ++i) {
      if (alive[i] && (deg[g.edges()[i].u] == 1 || deg[g.edges()[i].v] == 1)) {
        alive[i] = 0;
        changed = true;
      }
    }
  }
  return std::none_of(alive.begin(), alive.end(), [](char c) { return c != 0; });
}

// Smallest number of edge removals after which pred holds; m <= 24.
inline std::size_t naive_dist(const Graph& g, const std::function<bool(const Graph&)>& pred) {
  for (std::size_t k = 0; k <= g.m(); ++k) {
    std::vector<char> sel(g.m(), 0);
    std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < g.m(); ++i)
        if (sel[i]) mask |= std::uint64_t{1} << i;
      if (pred(subgraph_without(g, mask))) return k;
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  return g.m();
}

// Number of edge subsets of size m(h) forming a graph isomorphic to h.
inline std::size_t naive_count_copies(const Graph& g, const Graph& h) {
  std::size_t count = 0;
  std::vector<char> sel(g.m(), 0);
  if (h.m() > g.m()) return 0;
  std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(h.m()), 1);
  do {
    std::vector<VertexId> verts;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < g.m(); ++i) {
      if (!sel[i]) continue;
      es.push_back(g.edges()[i]);
      verts.push_back(g.edges()[i].u);
      verts.push_back(g.edges()[i].v);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() != h.n()) continue;
    std::vector<Edge> local;
    for (const auto& e : es) {
      const auto a = static_cast<VertexId>(std::lower_bound(verts.begin(), verts.end(), e.u) - verts.begin());
      const auto b = static_cast<VertexId>(std::lower_bound(verts.begin(), verts.end(), e.v) - verts.begin());
      local.push_back({a, b});
    }
    if (naive_contains(Graph::from_edges(verts.size(), local), h)) ++count;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return count;
}

}  // namespace testing
