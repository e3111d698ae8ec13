#pragma once

// Tree-exclusion testing: the global query-model tester and its
// rank-arbitrated CONGEST simulation.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dpt/congest.hpp"
#include "dpt/graph.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/tree_pattern.hpp"

namespace dpt {

/// Degree, i-th neighbour and uniform-edge queries on a fixed graph; every
/// query is counted.
class QueryOracle {
 public:
  explicit QueryOracle(const Graph& g) : g_(g) {}

  std::size_t degree(VertexId v);
  VertexId neighbor(VertexId v, std::size_t i);
  Edge random_edge(RandomStream& rng);

  [[nodiscard]] std::size_t query_count() const { return queries_; }
  [[nodiscard]] const Graph& graph() const { return g_; }

 private:
  const Graph& g_;
  std::size_t queries_ = 0;
};

using TreeLabels = std::unordered_map<VertexId, std::size_t>;

/// Labels v with i (false if v is already labelled), draws one uniform
/// neighbour per child label of i with replacement and recurses on them in
/// order. True iff every recursive call succeeds.
bool recursive_tree_exclusion(const TreePattern& t, std::size_t i, VertexId v, TreeLabels& labels,
                              QueryOracle& oracle, RandomStream& rng);

/// One attempt: uniform edge, uniform endpoint, fresh labels.
bool tree_attempt(const TreePattern& t, QueryOracle& oracle, RandomStream& rng);

/// ceil(k^(k^2) / epsilon^k), saturating.
std::uint64_t tree_iterations(std::size_t k, const Rational& epsilon);
/// 2 k^(k^2 + 1) / epsilon^k, the query budget of a full run.
double tree_query_budget(std::size_t k, const Rational& epsilon);

struct GlobalTreeResult {
  Verdict verdict = Verdict::Accept;
  std::uint64_t attempts = 0;
  std::size_t queries = 0;
};

/// Repeats attempts until one succeeds (REJECT) or `max_attempts`
/// (default tree_iterations) have failed (ACCEPT).
GlobalTreeResult global_tree_tester(const Graph& g, const TreePattern& t, const Rational& epsilon, RandomStream& rng,
                                    std::optional<std::uint64_t> max_attempts = {});

struct DistributedTreeOptions {
  std::size_t phase_cap = 1024;
  /// Only the run's initiator starts attempts.
  bool single_root = false;
};

/// Phases of 2k rounds: k competition rounds carrying (label, rank, root),
/// then k verification rounds carrying (rank, root, success) towards the
/// root. A root whose children all confirm rejects.
class TreeTesterProcess : public VertexProcess {
 public:
  TreeTesterProcess(const VertexInfo& info, std::shared_ptr<const TreePattern> t, std::size_t phases, bool starts);

  void send(RoundContext& ctx) override;
  void receive(RoundContext& ctx) override;

  /// Phases in which this vertex's own attempt was confirmed.
  [[nodiscard]] std::size_t confirmed() const { return confirmed_; }

 private:
  struct Assignment {
    std::uint64_t rank = 0;
    VertexId root = 0;
    std::size_t label = 0;
    std::optional<std::size_t> parent_port;
    std::size_t depth = 0;
  };

  void reset_phase();
  void send_labels(RoundContext& ctx);
  [[nodiscard]] bool subtree_ok() const;

  VertexInfo info_;
  std::shared_ptr<const TreePattern> owner_;
  const TreePattern& t_;
  std::size_t phases_;
  bool starts_;
  std::size_t confirmed_ = 0;

  std::optional<Assignment> current_;
  bool pending_ = false;
  bool aborted_ = false;
  std::vector<std::size_t> child_ports_;
  std::vector<char> reported_;
  std::unordered_map<VertexId, std::size_t> counts_;
};

class TreeTesterProgram : public VertexProgram {
 public:
  TreeTesterProgram(TreePattern t, const Rational& epsilon, DistributedTreeOptions options = {});
  [[nodiscard]] std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override;

  [[nodiscard]] std::size_t phases() const { return phases_; }
  [[nodiscard]] std::size_t phase_rounds() const { return 2 * t_->k(); }

 private:
  std::shared_ptr<const TreePattern> t_;
  std::size_t phases_;
  DistributedTreeOptions options_;
};

}  // namespace dpt
