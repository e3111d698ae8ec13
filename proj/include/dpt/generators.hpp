#pragma once

#include <cstdint>
#include <vector>

#include "dpt/graph.hpp"
#include "dpt/property.hpp"

namespace dpt {

struct GeneratedInstance {
  Graph graph;
  /// One entry per property the instance violates, with its exact distance.
  std::vector<FarnessCertificate> certificates;

  /// Certificate for the given property name, if the instance violates it.
  [[nodiscard]] const FarnessCertificate* certificate_for(const PropertyId& p) const;
};

/// Disjoint union of `copies` copies of a connected pattern. Certificates
/// cover triangle-, C4-, H- (when |V(pattern)| <= 4), tree- (when the pattern
/// is a tree), bipartite and cycle-freeness; each distance is copies times the
/// oracle distance of a single copy.
GeneratedInstance gen_disjoint_copies(const Graph& pattern, std::size_t copies);

/// A random graph on n vertices that satisfies the property; verified by an
/// oracle before returning.
Graph gen_property_instance(const PropertyId& property, std::size_t n, std::uint64_t seed);

/// Uniform graph with exactly m edges.
Graph gen_gnm(std::size_t n, std::size_t m, std::uint64_t seed);
/// Each pair independently with probability p.
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// Writes the certificate block ("key: value" lines) for an instance.
void write_certificates(std::ostream& out, const GeneratedInstance& inst);

}  // namespace dpt
