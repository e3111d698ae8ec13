#pragma once

// Decompose-then-verify testers, the cycle-freeness corrector and the
// bootstrapped per-cluster tester.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "dpt/congest.hpp"
#include "dpt/decomposition.hpp"
#include "dpt/graph.hpp"
#include "dpt/rational.hpp"

namespace dpt {

enum class VerifierKind { Bipartite, CycleFree };

/// What a verifier instance knows about its cluster.
struct ClusterRole {
  bool center = false;
  std::size_t radius_bound = 0;
};

/// Centre-initiated BFS over the ports it is given. Runs radius_bound + 1
/// rounds and then accepts unless it rejected.
std::unique_ptr<VertexProcess> make_verifier(VerifierKind kind, const ClusterRole& role);

/// A verifier run on the whole graph: the run's initiator plays the centre.
/// Without an explicit radius bound n - 1 is used.
class VerifierProgram : public VertexProgram {
 public:
  explicit VerifierProgram(VerifierKind kind, std::optional<std::size_t> radius_bound = {})
      : kind_(kind), radius_bound_(radius_bound) {}
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

 private:
  VerifierKind kind_;
  std::optional<std::size_t> radius_bound_;
};

/// Decomposition with epsilon/2 (drawn from stream 1), then the verifier on
/// every cluster over its internal ports.
class CompiledTesterProgram : public VertexProgram {
 public:
  CompiledTesterProgram(VerifierKind kind, Rational epsilon) : kind_(kind), epsilon_(epsilon) {}
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

 private:
  VerifierKind kind_;
  Rational epsilon_;
};

TrialReport compiled_tester(const Graph& g, VerifierKind kind, const Rational& epsilon, std::uint64_t seed,
                            const RunConfig& base = {});

/// Rounds of a compiled tester run in which nobody rejects.
std::size_t compiled_tester_rounds(std::size_t n, const Rational& epsilon);

/// Decomposition with epsilon/2 (stream 1), then `inner` run independently on
/// every cluster: internal ports only, rounds counted from the end of the
/// decomposition, draws from stream 0, the centre as initiator. A single
/// cluster therefore reproduces a plain run of `inner`.
class BootstrappedProgram : public VertexProgram {
 public:
  BootstrappedProgram(std::shared_ptr<const VertexProgram> inner, Rational epsilon)
      : inner_(std::move(inner)), epsilon_(epsilon) {}
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

 private:
  std::shared_ptr<const VertexProgram> inner_;
  Rational epsilon_;
};

TrialReport bootstrapped_tester(const Graph& g, std::shared_ptr<const VertexProgram> inner, const Rational& epsilon,
                                std::uint64_t seed, const RunConfig& base = {});

/// Per-vertex knowledge after the corrector: the decomposition view and the
/// ports whose edges are deleted.
class CorrectorProcess : public DecompositionProcess {
 public:
  CorrectorProcess(const VertexInfo& info, const ShiftParams& params) : DecompositionProcess(info, params) {}
  void receive(RoundContext& ctx) override;
  [[nodiscard]] const std::vector<std::size_t>& deleted_ports() const { return deleted_; }

 private:
  std::vector<std::size_t> deleted_;
};

class CorrectorProgram : public VertexProgram {
 public:
  explicit CorrectorProgram(Rational epsilon) : epsilon_(epsilon) {}
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

 private:
  Rational epsilon_;
};

struct CorrectorOutput {
  /// deleted[v]: neighbours w with edge vw deleted, as seen by v (sorted).
  std::vector<std::vector<VertexId>> deleted;
  std::size_t cluster_count = 0;
  std::size_t rounds_used = 0;
  std::size_t attempts = 1;
  std::uint64_t seed = 0;

  /// Sorted deleted edges; throws ProtocolError if the endpoints disagree.
  [[nodiscard]] std::vector<Edge> deleted_edges() const;
};

/// Deletes cut edges and the internal edges off the clusters' BFS trees.
/// Restarts like decompose() when a shift overflows.
CorrectorOutput cyclefree_corrector(const Graph& g, const Rational& epsilon, std::uint64_t seed,
                                    const RunConfig& base = {});

struct CorrectionCheck {
  bool consistent = true;
  bool acyclic = false;
  std::size_t deleted = 0;
  std::size_t kept = 0;
  std::size_t distance = 0;  // m - n + components
  double deletion_bound = 0;  // distance + eps m
  double kept_bound = 0;      // n + eps m

  [[nodiscard]] bool within_deletion_bound() const { return static_cast<double>(deleted) <= deletion_bound; }
  [[nodiscard]] bool within_kept_bound() const { return static_cast<double>(kept) <= kept_bound; }
};

CorrectionCheck check_correction(const Graph& g, const CorrectorOutput& out, const Rational& epsilon);

/// "deleted u v" lines, sorted.
void write_corrector_output(std::ostream& out, const CorrectorOutput& c);

}  // namespace dpt
