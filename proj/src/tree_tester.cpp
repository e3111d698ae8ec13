#include "dpt/tree_tester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpt {

std::size_t QueryOracle::degree(VertexId v) {
  ++queries_;
  return g_.degree(v);
}

VertexId QueryOracle::neighbor(VertexId v, std::size_t i) {
  ++queries_;
  return g_.neighbors(v)[i];
}

Edge QueryOracle::random_edge(RandomStream& rng) {
  ++queries_;
  if (g_.m() == 0) throw std::logic_error("random edge query on an edgeless graph");
  return g_.edges()[rng.below(g_.m())];
}

bool recursive_tree_exclusion(const TreePattern& t, std::size_t i, VertexId v, TreeLabels& labels,
                              QueryOracle& oracle, RandomStream& rng) {
  if (!labels.emplace(v, i).second) return false;
  const auto& kids = t.children(i);
  if (kids.empty()) return true;
  const auto d = oracle.degree(v);
  if (d == 0) return false;
  std::vector<VertexId> drawn;
  drawn.reserve(kids.size());
  for (std::size_t j = 0; j < kids.size(); ++j) drawn.push_back(oracle.neighbor(v, rng.below(d)));
  for (std::size_t j = 0; j < kids.size(); ++j) {
    if (!recursive_tree_exclusion(t, kids[j], drawn[j], labels, oracle, rng)) return false;
  }
  return true;
}

bool tree_attempt(const TreePattern& t, QueryOracle& oracle, RandomStream& rng) {
  const auto e = oracle.random_edge(rng);
  const VertexId v = rng.below(2) == 0 ? e.u : e.v;
  TreeLabels labels;
  return recursive_tree_exclusion(t, 0, v, labels, oracle, rng);
}

std::uint64_t tree_iterations(std::size_t k, const Rational& epsilon) {
  if (!epsilon.in_unit_interval()) throw std::invalid_argument("epsilon must lie in (0, 1]");
  using U = unsigned __int128;
  constexpr U kSaturate = std::numeric_limits<std::uint64_t>::max();
  U top = 1;
  U bottom = 1;
  bool saturated = false;
  auto mul = [&](U& x, std::uint64_t f) {
    if (x > kSaturate / f) {
      saturated = true;
    } else {
      x *= f;
    }
  };
  for (std::size_t i = 0; i < k * k && !saturated; ++i) mul(top, k);
  for (std::size_t i = 0; i < k && !saturated; ++i) {
    mul(top, static_cast<std::uint64_t>(epsilon.den()));
    mul(bottom, static_cast<std::uint64_t>(epsilon.num()));
  }
  if (saturated) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>((top + bottom - 1) / bottom);
}

double tree_query_budget(std::size_t k, const Rational& epsilon) {
  const auto kd = static_cast<double>(k);
  return 2.0 * std::pow(kd, kd * kd + 1) / std::pow(epsilon.value(), kd);
}

GlobalTreeResult global_tree_tester(const Graph& g, const TreePattern& t, const Rational& epsilon, RandomStream& rng,
                                    std::optional<std::uint64_t> max_attempts) {
  const auto limit = max_attempts.value_or(tree_iterations(t.k(), epsilon));
  GlobalTreeResult res;
  if (g.m() == 0) return res;
  QueryOracle oracle(g);
  while (res.attempts < limit) {
    ++res.attempts;
    if (tree_attempt(t, oracle, rng)) {
      res.verdict = Verdict::Reject;
      break;
    }
  }
  res.queries = oracle.query_count();
  return res;
}

TreeTesterProcess::TreeTesterProcess(const VertexInfo& info, std::shared_ptr<const TreePattern> t, std::size_t phases,
                                     bool starts)
    : info_(info), owner_(std::move(t)), t_(*owner_), phases_(phases), starts_(starts) {}

void TreeTesterProcess::reset_phase() {
  current_.reset();
  pending_ = false;
  aborted_ = false;
  child_ports_.clear();
  reported_.clear();
  counts_.clear();
}

void TreeTesterProcess::send_labels(RoundContext& ctx) {
  pending_ = false;
  const auto& kids = t_.children(current_->label);
  if (kids.empty()) return;
  if (ctx.degree() == 0) {
    aborted_ = true;
    return;
  }
  std::vector<std::size_t> ports;
  for (std::size_t j = 0; j < kids.size(); ++j) ports.push_back(ctx.rng().below(ctx.degree()));
  auto sorted = ports;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    aborted_ = true;
    return;
  }
  for (std::size_t j = 0; j < kids.size(); ++j) {
    ctx.send(ports[j], Message().id(kids[j]).rank(current_->rank).id(current_->root));
  }
  child_ports_ = ports;
  reported_.assign(ports.size(), 0);
}

bool TreeTesterProcess::subtree_ok() const {
  if (!current_ || aborted_) return false;
  const auto it = counts_.find(current_->root);
  if (it == counts_.end() || it->second != 1) return false;
  if (child_ports_.size() != t_.children(current_->label).size()) return false;
  return std::all_of(reported_.begin(), reported_.end(), [](char c) { return c != 0; });
}

void TreeTesterProcess::send(RoundContext& ctx) {
  const auto k = t_.k();
  const auto pr = (ctx.round() - 1) % (2 * k) + 1;
  if (pr == 1) {
    reset_phase();
    const auto n = static_cast<std::uint64_t>(info_.n);
    const auto rank = ctx.rng().below(std::max<std::uint64_t>(n * n, 1));
    if (!starts_) return;
    current_ = Assignment{rank, info_.id, 0, std::nullopt, 0};
    counts_[info_.id] = 1;
    send_labels(ctx);
    return;
  }
  if (pr <= k) {
    if (pending_) send_labels(ctx);
    return;
  }
  const auto j = pr - k;
  if (current_ && current_->depth >= 1 && current_->depth + j == k) {
    ctx.send(*current_->parent_port, Message().rank(current_->rank).id(current_->root).bit(subtree_ok()));
  }
}

void TreeTesterProcess::receive(RoundContext& ctx) {
  const auto k = t_.k();
  const auto pr = (ctx.round() - 1) % (2 * k) + 1;
  const auto phase = (ctx.round() - 1) / (2 * k) + 1;
  if (pr <= k) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg) continue;
      const auto label = static_cast<std::size_t>(msg->value(0));
      const auto rank = msg->value(1);
      const auto root = static_cast<VertexId>(msg->value(2));
      ++counts_[root];
      // Highest (rank, root id) wins; an overwritten attempt is abandoned.
      if (!current_ || std::pair(rank, root) > std::pair(current_->rank, current_->root)) {
        current_ = Assignment{rank, root, label, p, t_.label_depth(label)};
        pending_ = true;
        aborted_ = false;
        child_ports_.clear();
        reported_.clear();
      }
    }
    return;
  }
  for (std::size_t p = 0; p < ctx.degree(); ++p) {
    const auto& msg = ctx.inbox(p);
    if (!msg || !current_) continue;
    if (msg->value(0) != current_->rank || msg->value(1) != current_->root || msg->value(2) == 0) continue;
    for (std::size_t c = 0; c < child_ports_.size(); ++c) {
      if (child_ports_[c] == p) reported_[c] = 1;
    }
  }
  if (pr == 2 * k - 1 && current_ && current_->root == info_.id && subtree_ok()) {
    ++confirmed_;
    ctx.decide(Verdict::Reject);
    return;
  }
  if (pr == 2 * k && phase == phases_) ctx.decide(Verdict::Accept);
}

TreeTesterProgram::TreeTesterProgram(TreePattern t, const Rational& epsilon, DistributedTreeOptions options)
    : t_(std::make_shared<const TreePattern>(std::move(t))), options_(options) {
  if (t_->k() < 2) throw std::invalid_argument("tree pattern needs at least 2 vertices");
  const auto bound = tree_iterations(t_->k(), epsilon);
  phases_ = static_cast<std::size_t>(std::min<std::uint64_t>(bound, options.phase_cap));
  if (phases_ == 0) phases_ = 1;
}

std::unique_ptr<VertexProcess> TreeTesterProgram::init(const VertexInfo& info) const {
  const bool starts = t_->k() <= info.n && (!options_.single_root || info.initiator);
  return std::make_unique<TreeTesterProcess>(info, t_, phases_, starts);
}

}  // namespace dpt
