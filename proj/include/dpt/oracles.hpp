#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dpt/graph.hpp"
#include "dpt/property.hpp"

namespace dpt {

/// Thrown when a brute-force oracle is asked for an instance beyond its size guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns false if x and y were already in the same set.
  bool unite(std::size_t x, std::size_t y);
  [[nodiscard]] std::size_t set_count() const { return sets_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

/// Largest component size for which exponential oracles run.
inline constexpr std::size_t kBruteForceVertexLimit = 20;

[[nodiscard]] bool is_forest(std::size_t n, std::span<const Edge> edges);
[[nodiscard]] bool is_bipartite(const Graph& g);

/// Maximum number of edges crossing a 2-colouring; exponential, guarded.
std::size_t max_cut(const Graph& g);

/// Number of injective maps V(pattern) -> V(g) preserving pattern edges.
std::size_t count_embeddings(const Graph& g, const Graph& pattern);
std::size_t automorphism_count(const Graph& pattern);
/// Number of (not necessarily induced) subgraphs of g isomorphic to pattern.
/// Guard: pattern has at most 5 vertices or g has at most 20.
std::size_t count_subgraph_copies(const Graph& g, const Graph& pattern);

/// Edges of one copy of pattern in g restricted to edges with alive[i] set
/// (index into g.edges()); empty alive means all edges.
std::optional<std::vector<std::size_t>> find_copy(const Graph& g, const Graph& pattern,
                                                  std::span<const char> alive = {});

/// The covering procedure: repeatedly remove all edges of some copy until
/// none is left. Returns the removed copies (edge indices), which are
/// pairwise edge-disjoint.
std::vector<std::vector<std::size_t>> greedy_disjoint_cover(const Graph& g, const Graph& pattern);

/// Exact minimum number of edge deletions making g satisfy the property.
/// CycleFree is closed-form; the others are solved per connected component
/// by exhaustive search and throw GuardError past kBruteForceVertexLimit.
std::size_t dist_to_property(const Graph& g, const PropertyId& property);

}  // namespace dpt
