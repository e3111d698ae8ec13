#include "dpt/oracles.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace dpt {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --sets_;
  return true;
}

bool is_forest(std::size_t n, std::span<const Edge> edges) {
  DisjointSets ds(n);
  for (const auto& e : edges) {
    if (!ds.unite(e.u, e.v)) return false;
  }
  return true;
}

bool is_bipartite(const Graph& g) {
  std::vector<int> color(g.n(), -1);
  std::queue<VertexId> q;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::size_t max_cut(const Graph& g) {
  const auto n = g.n();
  if (n > kBruteForceVertexLimit) throw GuardError("max_cut: n=" + std::to_string(n) + " exceeds brute-force limit");
  if (n <= 1) return 0;
  // Gray-code walk over colourings with vertex 0 fixed; each step flips one vertex.
  std::vector<char> side(n, 0);
  long long cut = 0;
  long long best = 0;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto v = static_cast<VertexId>(std::countr_zero(i) + 1);
    for (auto w : g.neighbors(v)) cut += side[w] == side[v] ? 1 : -1;
    side[v] ^= 1;
    best = std::max(best, cut);
  }
  return static_cast<std::size_t>(best);
}

namespace {

std::size_t edge_index(const Graph& g, VertexId a, VertexId b) {
  const auto e = Edge::normalized(a, b);
  const auto& edges = g.edges();
  return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
}

/// Backtracking search for injective edge-preserving maps pattern -> g.
class Matcher {
 public:
  Matcher(const Graph& g, const Graph& pattern, std::span<const char> alive)
      : g_(g), p_(pattern), alive_(alive), image_(pattern.n()), used_(g.n(), 0) {
    // Visit pattern vertices so that each (after the first of its component)
    // has an earlier neighbour; start from the highest-degree vertex.
    std::vector<char> seen(p_.n(), 0);
    for (std::size_t round = 0; round < p_.n(); ++round) {
      VertexId start = static_cast<VertexId>(p_.n());
      for (VertexId v = 0; v < p_.n(); ++v) {
        if (!seen[v] && (start == p_.n() || p_.degree(v) > p_.degree(start))) start = v;
      }
      if (start == p_.n()) break;
      std::queue<VertexId> q;
      seen[start] = 1;
      q.push(start);
      while (!q.empty()) {
        auto v = q.front();
        q.pop();
        order_.push_back(v);
        for (auto w : p_.neighbors(v)) {
          if (!seen[w]) {
            seen[w] = 1;
            q.push(w);
          }
        }
      }
    }
    std::vector<std::size_t> pos(p_.n());
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    back_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (auto w : p_.neighbors(order_[i])) {
        if (pos[w] < i) back_[i].push_back(order_[pos[w]]);
      }
    }
  }

  /// Calls visit(image) per embedding; stops early when visit returns true.
  template <class Visit>
  bool run(Visit&& visit) { return extend(0, visit); }

  [[nodiscard]] const std::vector<VertexId>& image() const { return image_; }

 private:
  [[nodiscard]] bool usable(VertexId a, VertexId b) const {
    if (!g_.has_edge(a, b)) return false;
    return alive_.empty() || alive_[edge_index(g_, a, b)];
  }

  template <class Visit>
  bool extend(std::size_t i, Visit& visit) {
    if (i == order_.size()) return visit(image_);
    const auto pv = order_[i];
    auto try_candidate = [&](VertexId c) {
      if (used_[c]) return false;
      for (std::size_t j = 1; j < back_[i].size(); ++j) {
        if (!usable(image_[back_[i][j]], c)) return false;
      }
      image_[pv] = c;
      used_[c] = 1;
      const bool stop = extend(i + 1, visit);
      used_[c] = 0;
      return stop;
    };
    if (back_[i].empty()) {
      for (VertexId c = 0; c < g_.n(); ++c) {
        if (try_candidate(c)) return true;
      }
    } else {
      const auto anchor = image_[back_[i][0]];
      for (auto c : g_.neighbors(anchor)) {
        if (!alive_.empty() && !alive_[edge_index(g_, anchor, c)]) continue;
        if (try_candidate(c)) return true;
      }
    }
    return false;
  }

  const Graph& g_;
  const Graph& p_;
  std::span<const char> alive_;
  std::vector<VertexId> order_;
  std::vector<std::vector<VertexId>> back_;
  std::vector<VertexId> image_;
  std::vector<char> used_;
};

}  // namespace

std::size_t count_embeddings(const Graph& g, const Graph& pattern) {
  if (pattern.n() > g.n()) return 0;
  std::size_t count = 0;
  Matcher(g, pattern, {}).run([&](const std::vector<VertexId>&) {
    ++count;
    return false;
  });
  return count;
}

std::size_t automorphism_count(const Graph& pattern) { return count_embeddings(pattern, pattern); }

std::size_t count_subgraph_copies(const Graph& g, const Graph& pattern) {
  if (pattern.n() > 5 && g.n() > kBruteForceVertexLimit) {
    throw GuardError("count_subgraph_copies: pattern with " + std::to_string(pattern.n()) +
                     " vertices on n=" + std::to_string(g.n()) + " exceeds guard");
  }
  return count_embeddings(g, pattern) / automorphism_count(pattern);
}

std::optional<std::vector<std::size_t>> find_copy(const Graph& g, const Graph& pattern, std::span<const char> alive) {
  if (pattern.n() > g.n()) return std::nullopt;
  std::optional<std::vector<std::size_t>> found;
  Matcher(g, pattern, alive).run([&](const std::vector<VertexId>& image) {
    std::vector<std::size_t> ids;
    for (const auto& e : pattern.edges()) ids.push_back(edge_index(g, image[e.u], image[e.v]));
    found = std::move(ids);
    return true;
  });
  return found;
}

std::vector<std::vector<std::size_t>> greedy_disjoint_cover(const Graph& g, const Graph& pattern) {
  std::vector<char> alive(g.m(), 1);
  std::vector<std::vector<std::size_t>> cover;
  while (auto copy = find_copy(g, pattern, alive)) {
    for (auto e : *copy) alive[e] = 0;
    cover.push_back(std::move(*copy));
  }
  return cover;
}

namespace {

/// Minimum edge hitting set of all copies of pattern in a small connected
/// graph, by iterative deepening with a packing lower bound. Edges already
/// branched on are pinned so sibling branches do not revisit the same sets.
class HittingSetSearch {
 public:
  HittingSetSearch(const Graph& g, const Graph& pattern)
      : g_(g), pattern_(pattern), alive_(g.m(), 1), pinned_(g.m(), 0) {}

  std::size_t solve() {
    for (std::size_t budget = packing_bound();; ++budget) {
      if (search(budget)) return budget;
    }
  }

 private:
  static constexpr std::size_t kNodeLimit = 20'000'000;

  std::size_t packing_bound() {
    std::vector<char> scratch = alive_;
    std::size_t count = 0;
    while (auto copy = find_copy(g_, pattern_, scratch)) {
      for (auto e : *copy) scratch[e] = 0;
      ++count;
    }
    return count;
  }

  bool search(std::size_t budget) {
    if (++nodes_ > kNodeLimit) throw GuardError("dist_to_property: search budget exhausted");
    auto copy = find_copy(g_, pattern_, alive_);
    if (!copy) return true;
    if (budget == 0 || packing_bound() > budget) return false;
    std::vector<std::size_t> pinned_here;
    bool ok = false;
    for (auto e : *copy) {
      if (pinned_[e]) continue;
      alive_[e] = 0;
      ok = search(budget - 1);
      alive_[e] = 1;
      if (ok) break;
      pinned_[e] = 1;
      pinned_here.push_back(e);
    }
    for (auto e : pinned_here) pinned_[e] = 0;
    return ok;
  }

  const Graph& g_;
  const Graph& pattern_;
  std::vector<char> alive_;
  std::vector<char> pinned_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::size_t dist_to_property(const Graph& g, const PropertyId& property) {
  const auto comps = connected_components(g);
  if (property.kind() == PropertyKind::CycleFree) return g.m() - g.n() + comps.count;

  std::vector<std::vector<VertexId>> members(comps.count);
  for (VertexId v = 0; v < g.n(); ++v) members[comps.label[v]].push_back(v);

  std::size_t total = 0;
  for (const auto& vs : members) {
    if (vs.size() < 2) continue;
    auto sub = induced_subgraph(g, vs).graph;
    if (property.kind() == PropertyKind::Bipartite) {
      if (is_bipartite(sub)) continue;
      if (sub.n() > kBruteForceVertexLimit) {
        throw GuardError("dist_to_property(bipartite): component with " + std::to_string(sub.n()) + " vertices");
      }
      total += sub.m() - max_cut(sub);
      continue;
    }
    const auto& pattern = property.pattern();
    if (!find_copy(sub, pattern)) continue;
    if (sub.n() > kBruteForceVertexLimit) {
      throw GuardError("dist_to_property(" + property.name() + "): component with " + std::to_string(sub.n()) +
                       " vertices");
    }
    total += HittingSetSearch(sub, pattern).solve();
  }
  return total;
}

}  // namespace dpt
