#include "dpt/tree_pattern.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <queue>

namespace dpt {

TreePattern::TreePattern(std::vector<std::size_t> parent) : parent_(std::move(parent)) {
  const auto k = parent_.size();
  if (k < 1) throw GraphError("tree pattern needs at least one vertex");
  parent_[0] = 0;
  children_.assign(k, {});
  for (std::size_t i = 1; i < k; ++i) {
    if (parent_[i] >= k || parent_[i] == i) throw GraphError("bad parent for label " + std::to_string(i));
    children_[parent_[i]].push_back(i);
  }
  // Every label must reach the root.
  for (std::size_t i = 1; i < k; ++i) {
    std::size_t cur = i;
    for (std::size_t steps = 0; cur != 0; ++steps) {
      if (steps > k) throw GraphError("parent map has a cycle through label " + std::to_string(i));
      cur = parent_[cur];
    }
  }
}

TreePattern TreePattern::path(std::size_t k) {
  std::vector<std::size_t> p(k, 0);
  for (std::size_t i = 1; i < k; ++i) p[i] = i - 1;
  return TreePattern(std::move(p));
}

TreePattern TreePattern::star(std::size_t k) { return TreePattern(std::vector<std::size_t>(k, 0)); }

TreePattern TreePattern::from_graph(const Graph& g, VertexId root) {
  if (g.n() == 0 || g.m() + 1 != g.n() || !is_connected(g)) throw GraphError("pattern is not a tree");
  std::vector<std::size_t> label(g.n(), g.n());
  std::vector<std::size_t> parent(g.n(), 0);
  std::queue<VertexId> q;
  label[root] = 0;
  q.push(root);
  std::size_t next = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto w : g.neighbors(v)) {
      if (label[w] != g.n()) continue;
      label[w] = next;
      parent[next] = label[v];
      ++next;
      q.push(w);
    }
  }
  return TreePattern(std::move(parent));
}

TreePattern TreePattern::parse(std::string_view text) {
  std::vector<std::size_t> nums;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\r' || text[i] == '\t')) ++i;
    if (i >= text.size()) break;
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc{}) throw GraphError("tree pattern: expected integer");
    nums.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (nums.empty()) throw GraphError("tree pattern: empty input");
  const auto k = nums[0];
  if (k < 1 || nums.size() != 1 + 2 * (k - 1)) throw GraphError("tree pattern: expected k then k-1 'i parent' lines");
  std::vector<std::size_t> parent(k, k);
  parent[0] = 0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    auto label = nums[1 + 2 * j];
    auto par = nums[2 + 2 * j];
    if (label == 0 || label >= k || parent[label] != k) throw GraphError("tree pattern: bad or repeated label");
    parent[label] = par;
  }
  return TreePattern(std::move(parent));
}

TreePattern TreePattern::from_spec(const std::string& spec) {
  auto numeric = [&](std::size_t prefix) {
    std::size_t k = 0;
    auto s = std::string_view(spec).substr(prefix);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc{} || ptr != s.data() + s.size() || k < 2) throw GraphError("bad tree alias '" + spec + "'");
    return k;
  };
  if (spec.rfind("path:", 0) == 0) return path(numeric(5));
  if (spec.rfind("star:", 0) == 0) return star(numeric(5));
  std::ifstream in(spec);
  if (!in) throw GraphError("cannot open tree pattern file '" + spec + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse(text);
}

std::size_t TreePattern::depth() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < k(); ++i) {
    std::size_t d = 0;
    for (auto cur = i; cur != 0; cur = parent_[cur]) ++d;
    best = std::max(best, d);
  }
  return best;
}

Graph TreePattern::to_graph() const {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < k(); ++i) e.push_back(Edge::normalized(static_cast<VertexId>(i), static_cast<VertexId>(parent_[i])));
  return Graph::from_edges(k(), e);
}

bool TreePattern::is_star() const {
  if (k() <= 2) return true;
  auto g = to_graph();
  std::size_t internal = 0;
  for (VertexId v = 0; v < g.n(); ++v) internal += g.degree(v) > 1;
  return internal <= 1;
}

void TreePattern::write(std::ostream& out) const {
  out << k() << '\n';
  for (std::size_t i = 1; i < k(); ++i) out << i << ' ' << parent_[i] << '\n';
}

}  // namespace dpt
