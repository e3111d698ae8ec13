#include "dpt/property.hpp"

namespace dpt {

PropertyId::PropertyId(PropertyKind kind) : kind_(kind) {
  if (kind == PropertyKind::TriangleFree) pattern_ = complete_graph(3);
  if (kind == PropertyKind::C4Free) pattern_ = cycle_graph(4);
}

PropertyId PropertyId::h_free(Graph pattern, std::string alias) {
  if (pattern.n() < 2 || pattern.n() > 4 || !is_connected(pattern)) {
    throw GraphError("H pattern must be connected with 2 to 4 vertices");
  }
  PropertyId p(PropertyKind::HFree);
  p.pattern_ = std::move(pattern);
  p.alias_ = std::move(alias);
  return p;
}

PropertyId PropertyId::tree_free(TreePattern tree) {
  if (tree.k() < 2) throw GraphError("tree pattern needs at least 2 vertices");
  PropertyId p(PropertyKind::TreeFree);
  p.pattern_ = tree.to_graph();
  p.tree_ = std::move(tree);
  return p;
}

PropertyId PropertyId::parse(const std::string& name) {
  if (name == "triangle") return triangle_free();
  if (name == "c4") return c4_free();
  if (name == "bipartite") return bipartite();
  if (name == "cyclefree") return cycle_free();
  if (name.rfind("h4:", 0) == 0) {
    auto alias = name.substr(3);
    return h_free(named_pattern(alias), alias);
  }
  if (name.rfind("tree:", 0) == 0) {
    auto spec = name.substr(5);
    auto p = tree_free(TreePattern::from_spec(spec));
    p.alias_ = spec;
    return p;
  }
  throw GraphError("unknown property '" + name + "'");
}

std::string PropertyId::name() const {
  switch (kind_) {
    case PropertyKind::TriangleFree: return "triangle";
    case PropertyKind::C4Free: return "c4";
    case PropertyKind::Bipartite: return "bipartite";
    case PropertyKind::CycleFree: return "cyclefree";
    case PropertyKind::HFree: {
      if (!alias_.empty()) return "h4:" + alias_;
      std::string s = "h4:";
      for (const auto& e : pattern_.edges()) s += std::to_string(e.u) + std::to_string(e.v) + ".";
      return s;
    }
    case PropertyKind::TreeFree: {
      if (!alias_.empty()) return "tree:" + alias_;
      return "tree:k" + std::to_string(tree_->k());
    }
  }
  return "unknown";
}

}  // namespace dpt
