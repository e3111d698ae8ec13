#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpt/congest.hpp"
#include "dpt/graph.hpp"
#include "dpt/rational.hpp"

namespace dpt {

/// Exponential-shift parameters derived from (n, epsilon): shifts are drawn
/// with rate epsilon/2 and capped at 2 ln n / rate. A vertex v whose ball is
/// first reached at growth step g by centre c satisfies
/// floor(delta_c) - dist(c, v) >= floor(delta_u) - dist(u, v) for all u.
struct ShiftParams {
  double rate = 0;
  double cap = 0;
  std::size_t cap_steps = 0;  // ceil(cap); also the radius bound

  static ShiftParams for_graph(std::size_t n, const Rational& epsilon);
};

/// Number of rounds of the distributed decomposition: one id exchange merged
/// with growth step 0, cap_steps more growth steps, one cut-edge exchange.
std::size_t decomposition_rounds(const ShiftParams& params);

/// What a vertex knows after the decomposition.
struct ClusterView {
  VertexId center = 0;
  std::optional<std::size_t> parent_port;
  std::vector<VertexId> neighbor_ids;  // by port
  std::vector<char> cut_port;           // by port
  std::vector<char> child_port;         // by port: neighbour's parent is this vertex
  std::size_t radius_bound = 0;
  bool shift_overflow = false;

  [[nodiscard]] bool is_center(VertexId self) const { return center == self; }
  [[nodiscard]] std::vector<std::size_t> internal_ports() const;
};

/// Distributed exponential-shift clustering at one vertex. Rounds are counted
/// from 1 in the context it is driven with; draws come from ctx.rng().
class DecompositionProcess : public VertexProcess {
 public:
  DecompositionProcess(const VertexInfo& info, const ShiftParams& params);

  void send(RoundContext& ctx) override;
  void receive(RoundContext& ctx) override;

  [[nodiscard]] bool finished() const { return finished_; }
  [[nodiscard]] const ClusterView& view() const { return view_; }
  [[nodiscard]] double shift() const { return shift_; }

 private:
  VertexId self_;
  ShiftParams params_;
  std::size_t start_step_ = 0;
  double shift_ = 0;
  bool claimed_ = false;
  bool announce_ = false;
  bool finished_ = false;
  ClusterView view_;
};

class DecompositionProgram : public VertexProgram {
 public:
  explicit DecompositionProgram(Rational epsilon) : epsilon_(epsilon) {}
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

 private:
  Rational epsilon_;
};

struct Decomposition {
  std::vector<VertexId> cluster_of;
  std::vector<std::optional<VertexId>> parent_of;
  std::vector<Edge> cut_edges;  // sorted
  std::size_t cluster_diameter_bound = 0;
  std::size_t radius_bound = 0;
  std::size_t rounds_used = 0;
  std::size_t attempts = 1;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t cluster_count() const;
};

/// Runs the distributed decomposition; if any shift exceeds the cap the run
/// is repeated with a re-derived seed (reported in `attempts`).
Decomposition decompose(const Graph& g, const Rational& epsilon, std::uint64_t seed,
                        const RunConfig& base = {});

/// Seed used for restart attempt `attempt` (0 = the caller's seed).
std::uint64_t restart_seed(std::uint64_t seed, std::size_t attempt);

struct DecompositionReport {
  std::vector<std::string> violations;
  double cut_fraction = 0;
  std::size_t max_center_eccentricity = 0;
  std::size_t max_cluster_diameter = 0;
  std::size_t cluster_count = 0;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Global check of a decomposition: partition, parent pointers inside the
/// cluster and leading to the centre, edge classification, strong diameter
/// against the bound (BFS inside each cluster). Never throws.
DecompositionReport verify_decomposition(const Graph& g, const Decomposition& d, const Rational& epsilon);

/// "v cluster parent" lines (parent -1 at centres), then "cut u v" lines.
void write_decomposition(std::ostream& out, const Decomposition& d);

}  // namespace dpt
