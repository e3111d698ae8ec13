#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpt/graph.hpp"

namespace dpt {

/// Rooted tree with labels 0..k-1; label 0 is the root.
class TreePattern {
 public:
  /// parent[0] is ignored; parent[i] < k for i >= 1. Throws GraphError unless
  /// the parent map forms a single tree rooted at 0.
  explicit TreePattern(std::vector<std::size_t> parent);

  /// Path on k vertices rooted at an endpoint, labelled along the path.
  static TreePattern path(std::size_t k);
  /// Star on k vertices rooted at the centre.
  static TreePattern star(std::size_t k);
  /// The same tree as `g` (which must be a tree) rooted at `root`, labels in BFS order.
  static TreePattern from_graph(const Graph& g, VertexId root = 0);
  /// File format: first line "k", then k-1 lines "i parent(i)".
  static TreePattern parse(std::string_view text);
  /// "path:k", "star:k" or a file path.
  static TreePattern from_spec(const std::string& spec);

  [[nodiscard]] std::size_t k() const { return parent_.size(); }
  [[nodiscard]] std::size_t parent(std::size_t label) const { return parent_[label]; }
  [[nodiscard]] const std::vector<std::size_t>& children(std::size_t label) const { return children_[label]; }
  /// Degree of the label's vertex in T.
  [[nodiscard]] std::size_t degree(std::size_t label) const {
    return children_[label].size() + (label == 0 ? 0 : 1);
  }
  [[nodiscard]] std::size_t depth() const;
  [[nodiscard]] std::size_t label_depth(std::size_t label) const {
    std::size_t d = 0;
    for (; label != 0; label = parent_[label]) ++d;
    return d;
  }
  [[nodiscard]] Graph to_graph() const;
  [[nodiscard]] bool is_star() const;

  void write(std::ostream& out) const;

  friend bool operator==(const TreePattern& a, const TreePattern& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace dpt
