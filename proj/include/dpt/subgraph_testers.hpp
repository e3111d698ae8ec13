#pragma once

// Constant-round testers for triangle-, C4- and H-freeness (|V(H)| <= 4).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dpt/congest.hpp"
#include "dpt/graph.hpp"
#include "dpt/rational.hpp"

namespace dpt {

/// Neighbour ids and degrees by port, learned in round 1.
struct NeighborKnowledge {
  std::vector<VertexId> ids;
  std::vector<std::size_t> degrees;

  [[nodiscard]] std::size_t size() const { return ids.size(); }
  [[nodiscard]] bool adjacent(VertexId w) const;

  static NeighborKnowledge from_graph(const Graph& g, VertexId v);
};

enum class PiWeights {
  DegreeMinusOne,  // pi(w) proportional to deg(w) - 1
  Degree,          // pi(w) proportional to deg(w)
};

/// Integer weights over ports; all zero is the null distribution.
struct PiDistribution {
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;

  [[nodiscard]] bool is_null() const { return total == 0; }
  [[nodiscard]] double probability(std::size_t port) const;
  std::size_t sample(RandomStream& rng) const;
};

/// Throws std::invalid_argument on an empty neighbourhood.
PiDistribution pi_v_distribution(const NeighborKnowledge& k, PiWeights weights = PiWeights::DegreeMinusOne);

/// Uniform neighbour other than the one on `excluded_port`; none if there is no other.
std::optional<VertexId> draw_other_neighbor(const NeighborKnowledge& k, std::size_t excluded_port, RandomStream& rng);

struct TwoPathReport {
  VertexId origin = 0;
  VertexId middle = 0;
  VertexId endpoint = 0;
  bool origin_endpoint_adjacent = false;
};

/// p(v) = <v, A, B_v(A)> with A ~ pi; received_b[p] is the value the
/// neighbour on port p sent to v this iteration (none for its marker).
std::optional<TwoPathReport> sample_2path(VertexId v, const NeighborKnowledge& k, const PiDistribution& pi,
                                          std::span<const std::optional<VertexId>> received_b, RandomStream& rng);

/// A detection seen by a receiver: the sender's port and what it reported.
struct Detection {
  std::size_t iteration = 0;  // 1-based
  std::size_t sender_port = 0;
  VertexId sender = 0;
  VertexId a = 0;
  VertexId b = 0;
};

struct LocalTesterOptions {
  PiWeights weights = PiWeights::DegreeMinusOne;
  /// Record detections instead of rejecting; every vertex then accepts
  /// after the full schedule.
  bool record_only = false;
};

/// t = ceil(4 / epsilon) for triangles, ceil(16 / epsilon) for 4-vertex patterns.
std::size_t triangle_iterations(const Rational& epsilon);
std::size_t four_vertex_iterations(const Rational& epsilon);

/// Rounds of an accepting run: 1 + t (triangle), 1 + 3t (C4 schedule), 1 (degree tests).
std::size_t local_tester_rounds(const Graph& h, const Rational& epsilon);

/// Per-vertex process shared by all local testers.
class LocalTesterProcess : public VertexProcess {
 public:
  enum class Mode { Degree, Triangle, FourVertex };

  struct Plan {
    Mode mode = Mode::Triangle;
    std::size_t iterations = 0;
    std::size_t degree_threshold = 0;  // Degree mode: reject iff deg >= threshold
    std::vector<char> contains_h;      // FourVertex: by 6-bit edge mask of the 4-vertex graph
    bool c4_rule = true;               // FourVertex: plain "a != u and b in N(u)" rule
    LocalTesterOptions options;
  };

  LocalTesterProcess(const VertexInfo& info, std::shared_ptr<const Plan> plan);

  void send(RoundContext& ctx) override;
  void receive(RoundContext& ctx) override;

  [[nodiscard]] const std::vector<Detection>& detections() const { return detections_; }
  [[nodiscard]] const NeighborKnowledge& knowledge() const { return known_; }

 private:
  void detect(RoundContext& ctx, Detection d);
  void check_paths(RoundContext& ctx, std::size_t iteration);

  VertexInfo info_;
  std::shared_ptr<const Plan> plan_;
  NeighborKnowledge known_;
  std::vector<VertexId> sorted_ids_;
  std::optional<PiDistribution> pi_;
  std::vector<std::optional<VertexId>> received_b_;
  std::vector<std::optional<TwoPathReport>> received_paths_;
  std::vector<Detection> detections_;
};

class LocalTesterProgram : public VertexProgram {
 public:
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;
  [[nodiscard]] const LocalTesterProcess::Plan& plan() const { return *plan_; }

 protected:
  explicit LocalTesterProgram(LocalTesterProcess::Plan plan)
      : plan_(std::make_shared<const LocalTesterProcess::Plan>(std::move(plan))) {}

 private:
  std::shared_ptr<const LocalTesterProcess::Plan> plan_;
};

class TriangleTesterProgram : public LocalTesterProgram {
 public:
  explicit TriangleTesterProgram(const Rational& epsilon, LocalTesterOptions options = {});
};

class C4TesterProgram : public LocalTesterProgram {
 public:
  explicit C4TesterProgram(const Rational& epsilon, LocalTesterOptions options = {});
};

/// Dispatch on h: K2, P3 and K_{1,3} by degree in one round, the triangle by
/// the triangle tester, any other connected 4-vertex pattern by the C4
/// schedule with subgraph containment on the reconstructed 4-vertex graph.
class H4TesterProgram : public LocalTesterProgram {
 public:
  H4TesterProgram(const Graph& h, const Rational& epsilon, LocalTesterOptions options = {});
};

}  // namespace dpt
