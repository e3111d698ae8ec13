#pragma once

#include <optional>
#include <string>

#include "dpt/graph.hpp"
#include "dpt/rational.hpp"
#include "dpt/tree_pattern.hpp"

namespace dpt {

enum class PropertyKind { TriangleFree, C4Free, HFree, Bipartite, CycleFree, TreeFree };

/// A tested graph property. HFree carries a connected pattern on 2..4
/// vertices; TreeFree carries a rooted tree pattern.
class PropertyId {
 public:
  static PropertyId triangle_free() { return PropertyId(PropertyKind::TriangleFree); }
  static PropertyId c4_free() { return PropertyId(PropertyKind::C4Free); }
  static PropertyId bipartite() { return PropertyId(PropertyKind::Bipartite); }
  static PropertyId cycle_free() { return PropertyId(PropertyKind::CycleFree); }
  static PropertyId h_free(Graph pattern, std::string alias = {});
  static PropertyId tree_free(TreePattern tree);

  /// Parses the CLI names: triangle, c4, h4:<alias>, bipartite, cyclefree,
  /// tree:<path:k|star:k|file>.
  static PropertyId parse(const std::string& name);

  [[nodiscard]] PropertyKind kind() const { return kind_; }
  /// The forbidden subgraph for the subgraph-freeness kinds (triangle, C4,
  /// H, tree); empty graph otherwise.
  [[nodiscard]] const Graph& pattern() const { return pattern_; }
  [[nodiscard]] const TreePattern& tree() const { return *tree_; }
  [[nodiscard]] bool is_subgraph_freeness() const {
    return kind_ != PropertyKind::Bipartite && kind_ != PropertyKind::CycleFree;
  }
  [[nodiscard]] std::string name() const;

 private:
  explicit PropertyId(PropertyKind kind);

  PropertyKind kind_;
  Graph pattern_;
  std::string alias_;
  std::optional<TreePattern> tree_;
};

/// Exact removal distance of a generated instance from a property. The
/// instance is epsilon-far for every epsilon <= distance / m.
struct FarnessCertificate {
  PropertyId property;
  Rational epsilon;
  std::size_t distance = 0;
};

}  // namespace dpt
