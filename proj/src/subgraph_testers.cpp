#include "dpt/subgraph_testers.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "dpt/oracles.hpp"

namespace dpt {

bool NeighborKnowledge::adjacent(VertexId w) const { return std::find(ids.begin(), ids.end(), w) != ids.end(); }

NeighborKnowledge NeighborKnowledge::from_graph(const Graph& g, VertexId v) {
  NeighborKnowledge k;
  for (auto w : g.neighbors(v)) {
    k.ids.push_back(w);
    k.degrees.push_back(g.degree(w));
  }
  return k;
}

double PiDistribution::probability(std::size_t port) const {
  if (total == 0) return 0.0;
  return static_cast<double>(weights.at(port)) / static_cast<double>(total);
}

std::size_t PiDistribution::sample(RandomStream& rng) const {
  if (total == 0) throw std::logic_error("sampling the null distribution");
  auto r = rng.below(total);
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (r < weights[p]) return p;
    r -= weights[p];
  }
  return weights.size() - 1;
}

PiDistribution pi_v_distribution(const NeighborKnowledge& k, PiWeights weights) {
  if (k.size() == 0) throw std::invalid_argument("pi distribution of an empty neighbourhood");
  PiDistribution pi;
  pi.weights.reserve(k.size());
  for (auto d : k.degrees) {
    const std::uint64_t w = weights == PiWeights::DegreeMinusOne ? (d > 0 ? d - 1 : 0) : d;
    pi.weights.push_back(w);
    pi.total += w;
  }
  return pi;
}

std::optional<VertexId> draw_other_neighbor(const NeighborKnowledge& k, std::size_t excluded_port, RandomStream& rng) {
  if (k.size() <= 1) return std::nullopt;
  auto idx = static_cast<std::size_t>(rng.below(k.size() - 1));
  if (idx >= excluded_port) ++idx;
  return k.ids[idx];
}

std::optional<TwoPathReport> sample_2path(VertexId v, const NeighborKnowledge& k, const PiDistribution& pi,
                                          std::span<const std::optional<VertexId>> received_b, RandomStream& rng) {
  if (pi.is_null()) return std::nullopt;
  const auto a_port = pi.sample(rng);
  const auto& b = received_b[a_port];
  if (!b) return std::nullopt;
  return TwoPathReport{v, k.ids[a_port], *b, k.adjacent(*b)};
}

std::size_t triangle_iterations(const Rational& epsilon) {
  return static_cast<std::size_t>(epsilon.ceil_inverse_times(4));
}

std::size_t four_vertex_iterations(const Rational& epsilon) {
  return static_cast<std::size_t>(epsilon.ceil_inverse_times(16));
}

namespace {

using Plan = LocalTesterProcess::Plan;
using Mode = LocalTesterProcess::Mode;

// Pair order of the 6-bit mask over vertices {0,1,2,3}.
constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::vector<char> containment_table(const Graph& h) {
  std::vector<char> table(64);
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < kPairs.size(); ++i) {
      if (mask & (1u << i)) e.push_back({static_cast<VertexId>(kPairs[i][0]), static_cast<VertexId>(kPairs[i][1])});
    }
    table[mask] = count_embeddings(Graph::from_edges(4, e), h) > 0;
  }
  return table;
}

Plan triangle_plan(const Rational& epsilon, const LocalTesterOptions& options) {
  if (!epsilon.in_unit_interval()) throw std::invalid_argument("epsilon must lie in (0, 1]");
  Plan p;
  p.mode = Mode::Triangle;
  p.iterations = triangle_iterations(epsilon);
  p.options = options;
  return p;
}

Plan four_vertex_plan(const Rational& epsilon, const LocalTesterOptions& options) {
  if (!epsilon.in_unit_interval()) throw std::invalid_argument("epsilon must lie in (0, 1]");
  Plan p;
  p.mode = Mode::FourVertex;
  p.iterations = four_vertex_iterations(epsilon);
  p.options = options;
  return p;
}

Plan pattern_plan(const Graph& h, const Rational& epsilon, const LocalTesterOptions& options) {
  if (h.n() < 2 || h.n() > 4 || !is_connected(h)) {
    throw std::invalid_argument("pattern must be connected with 2 to 4 vertices");
  }
  if (!epsilon.in_unit_interval()) throw std::invalid_argument("epsilon must lie in (0, 1]");
  auto degree_plan = [&](std::size_t threshold) {
    Plan p;
    p.mode = Mode::Degree;
    p.degree_threshold = threshold;
    p.options = options;
    return p;
  };
  if (h.n() == 2) return degree_plan(1);
  if (h.n() == 3) return h.m() == 2 ? degree_plan(2) : triangle_plan(epsilon, options);
  if (h.m() == 3 && h.max_degree() == 3) return degree_plan(3);
  auto p = four_vertex_plan(epsilon, options);
  p.c4_rule = false;
  p.contains_h = containment_table(h);
  return p;
}

std::size_t plan_rounds(const Plan& p) {
  switch (p.mode) {
    case Mode::Degree: return 1;
    case Mode::Triangle: return 1 + p.iterations;
    case Mode::FourVertex: return 1 + 3 * p.iterations;
  }
  return 0;
}

}  // namespace

std::size_t local_tester_rounds(const Graph& h, const Rational& epsilon) {
  return plan_rounds(pattern_plan(h, epsilon, {}));
}

LocalTesterProcess::LocalTesterProcess(const VertexInfo& info, std::shared_ptr<const Plan> plan)
    : info_(info), plan_(std::move(plan)) {
  received_b_.resize(info.degree);
  received_paths_.resize(info.degree);
}

void LocalTesterProcess::send(RoundContext& ctx) {
  const auto r = ctx.round();
  if (r == 1) {
    ctx.send_all(Message().id(info_.id).id(info_.degree));
    return;
  }
  auto none = [] { return Message().bit(false); };
  if (plan_->mode == Mode::Triangle) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto x = draw_other_neighbor(known_, p, ctx.rng());
      ctx.send(p, x ? Message().id(*x) : none());
    }
    return;
  }
  const auto phase = (r - 2) % 3;
  if (phase == 0) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto x = draw_other_neighbor(known_, p, ctx.rng());
      ctx.send(p, x ? Message().id(*x) : none());
    }
  } else if (phase == 1) {
    if (!pi_) return;
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto path = sample_2path(info_.id, known_, *pi_, received_b_, ctx.rng());
      if (!path) continue;
      Message msg;
      msg.id(path->middle).id(path->endpoint);
      if (!plan_->c4_rule) msg.bit(path->origin_endpoint_adjacent);
      ctx.send(p, msg);
    }
  }
}

void LocalTesterProcess::receive(RoundContext& ctx) {
  const auto r = ctx.round();
  if (r == 1) {
    known_.ids.resize(ctx.degree());
    known_.degrees.resize(ctx.degree());
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg) throw ProtocolError("local tester: missing neighbour id");
      known_.ids[p] = static_cast<VertexId>(msg->value(0));
      known_.degrees[p] = static_cast<std::size_t>(msg->value(1));
    }
    if (plan_->mode == Mode::Degree) {
      ctx.decide(info_.degree >= plan_->degree_threshold ? Verdict::Reject : Verdict::Accept);
      return;
    }
    if (plan_->mode == Mode::FourVertex && ctx.degree() > 0) pi_ = pi_v_distribution(known_, plan_->options.weights);
    return;
  }
  if (plan_->mode == Mode::Triangle) {
    const auto iteration = r - 1;
    for (std::size_t p = 0; p < ctx.degree() && !ctx.decided(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg || (*msg)[0].kind != FieldKind::Id) continue;
      const auto x = static_cast<VertexId>(msg->value(0));
      if (known_.adjacent(x)) detect(ctx, Detection{iteration, p, known_.ids[p], x, x});
    }
    if (!ctx.decided() && r == 1 + plan_->iterations) ctx.decide(Verdict::Accept);
    return;
  }
  const auto iteration = (r - 2) / 3 + 1;
  const auto phase = (r - 2) % 3;
  if (phase == 0) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      received_b_[p].reset();
      if (msg && (*msg)[0].kind == FieldKind::Id) received_b_[p] = static_cast<VertexId>(msg->value(0));
    }
  } else if (phase == 1) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      received_paths_[p].reset();
      if (!msg) continue;
      TwoPathReport path{known_.ids[p], static_cast<VertexId>(msg->value(0)), static_cast<VertexId>(msg->value(1)),
                         msg->size() > 2 && msg->value(2) != 0};
      received_paths_[p] = path;
    }
  } else {
    check_paths(ctx, iteration);
    if (!ctx.decided() && r == 1 + 3 * plan_->iterations) ctx.decide(Verdict::Accept);
  }
}

void LocalTesterProcess::check_paths(RoundContext& ctx, std::size_t iteration) {
  const auto self = info_.id;
  for (std::size_t p = 0; p < received_paths_.size() && !ctx.decided(); ++p) {
    const auto& path = received_paths_[p];
    if (!path) continue;
    const auto [w, a, b, wb] = *path;
    if (plan_->c4_rule) {
      if (a != self && known_.adjacent(b)) detect(ctx, Detection{iteration, p, w, a, b});
      continue;
    }
    if (a == self || b == self) continue;
    // Vertices 0..3 = self, w, a, b.
    const std::array<bool, 6> present{true, known_.adjacent(a), known_.adjacent(b), true, wb, true};
    unsigned mask = 0;
    for (std::size_t i = 0; i < present.size(); ++i) mask |= present[i] ? (1u << i) : 0u;
    if (plan_->contains_h[mask]) detect(ctx, Detection{iteration, p, w, a, b});
  }
}

void LocalTesterProcess::detect(RoundContext& ctx, Detection d) {
  detections_.push_back(d);
  if (!plan_->options.record_only) ctx.decide(Verdict::Reject);
}

std::unique_ptr<VertexProcess> LocalTesterProgram::init(const VertexInfo& info) const {
  return std::make_unique<LocalTesterProcess>(info, plan_);
}

TriangleTesterProgram::TriangleTesterProgram(const Rational& epsilon, LocalTesterOptions options)
    : LocalTesterProgram(triangle_plan(epsilon, options)) {}

C4TesterProgram::C4TesterProgram(const Rational& epsilon, LocalTesterOptions options)
    : LocalTesterProgram(four_vertex_plan(epsilon, options)) {}

H4TesterProgram::H4TesterProgram(const Graph& h, const Rational& epsilon, LocalTesterOptions options)
    : LocalTesterProgram(pattern_plan(h, epsilon, options)) {}

}  // namespace dpt
