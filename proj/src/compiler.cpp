#include "dpt/compiler.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

#include "dpt/oracles.hpp"

namespace dpt {

namespace {

class BipartiteVerifier : public VertexProcess {
 public:
  explicit BipartiteVerifier(const ClusterRole& role) : role_(role) {
    if (role.center) {
      color_ = 0;
      pending_ = true;
    }
  }

  void send(RoundContext& ctx) override {
    if (!pending_) return;
    ctx.send_all(Message().bit(*color_ != 0));
    pending_ = false;
  }

  void receive(RoundContext& ctx) override {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg) continue;
      const auto c = static_cast<int>(msg->value(0));
      if (!color_) {
        color_ = 1 - c;
        pending_ = true;
      } else if (c == *color_) {
        ctx.decide(Verdict::Reject);
        return;
      }
    }
    if (ctx.round() >= role_.radius_bound + 1) ctx.decide(Verdict::Accept);
  }

 private:
  ClusterRole role_;
  std::optional<int> color_;
  bool pending_ = false;
};

class CycleFreeVerifier : public VertexProcess {
 public:
  explicit CycleFreeVerifier(const ClusterRole& role) : role_(role) {
    if (role.center) {
      tokens_ = 1;
      pending_ = true;
    }
  }

  void send(RoundContext& ctx) override {
    if (!pending_) return;
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      if (parent_ != p) ctx.send(p, Message().bit(true));
    }
    pending_ = false;
  }

  void receive(RoundContext& ctx) override {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      if (!ctx.inbox(p)) continue;
      if (++tokens_ == 1) {
        parent_ = p;
        pending_ = true;
      }
    }
    if (tokens_ >= 2) {
      ctx.decide(Verdict::Reject);
      return;
    }
    if (ctx.round() >= role_.radius_bound + 1) ctx.decide(Verdict::Accept);
  }

 private:
  ClusterRole role_;
  std::size_t tokens_ = 0;
  std::optional<std::size_t> parent_;
  bool pending_ = false;
};

// Decomposition on stream 1, then a per-cluster inner process on the
// internal ports with rounds and draws relative to the decomposition's end.
class ClusteredProcess : public VertexProcess {
 public:
  ClusteredProcess(const VertexInfo& info, const ShiftParams& params)
      : info_(info), decomp_(info, params), decomp_rounds_(decomposition_rounds(params)), all_ports_(info.degree) {
    std::iota(all_ports_.begin(), all_ports_.end(), std::size_t{0});
  }

  void send(RoundContext& ctx) override {
    if (ctx.round() <= decomp_rounds_) {
      rng_ = ctx.derive_stream(ctx.round(), 1);
      auto sub = ctx.restricted(all_ports_, 0, rng_);
      decomp_.send(sub);
      return;
    }
    rng_ = ctx.derive_stream(ctx.round() - decomp_rounds_, 0);
    auto sub = ctx.restricted(internal_, decomp_rounds_, rng_);
    inner_->send(sub);
  }

  void receive(RoundContext& ctx) override {
    if (ctx.round() <= decomp_rounds_) {
      auto sub = ctx.restricted(all_ports_, 0, rng_);
      decomp_.receive(sub);
      if (!decomp_.finished()) return;
      internal_ = decomp_.view().internal_ports();
      VertexInfo inner_info{info_.id, internal_.size(), info_.n, decomp_.view().is_center(info_.id)};
      inner_ = make_inner(inner_info, decomp_.view());
      auto start_rng = ctx.derive_stream(0, 0);
      auto start = ctx.restricted(internal_, decomp_rounds_, start_rng);
      inner_->start(start);
      return;
    }
    auto sub = ctx.restricted(internal_, decomp_rounds_, rng_);
    inner_->receive(sub);
  }

 protected:
  virtual std::unique_ptr<VertexProcess> make_inner(const VertexInfo& info, const ClusterView& view) const = 0;

 private:
  VertexInfo info_;
  DecompositionProcess decomp_;
  std::size_t decomp_rounds_;
  std::vector<std::size_t> all_ports_;
  std::vector<std::size_t> internal_;
  RandomStream rng_;
  std::unique_ptr<VertexProcess> inner_;
};

class CompiledProcess : public ClusteredProcess {
 public:
  CompiledProcess(const VertexInfo& info, const ShiftParams& params, VerifierKind kind)
      : ClusteredProcess(info, params), kind_(kind) {}

 protected:
  std::unique_ptr<VertexProcess> make_inner(const VertexInfo& info, const ClusterView& view) const override {
    return make_verifier(kind_, ClusterRole{info.initiator, view.radius_bound});
  }

 private:
  VerifierKind kind_;
};

class BootstrappedProcess : public ClusteredProcess {
 public:
  BootstrappedProcess(const VertexInfo& info, const ShiftParams& params, const VertexProgram& inner)
      : ClusteredProcess(info, params), inner_(inner) {}

 protected:
  std::unique_ptr<VertexProcess> make_inner(const VertexInfo& info, const ClusterView&) const override {
    return inner_.init(info);
  }

 private:
  const VertexProgram& inner_;
};

}  // namespace

std::unique_ptr<VertexProcess> make_verifier(VerifierKind kind, const ClusterRole& role) {
  switch (kind) {
    case VerifierKind::Bipartite: return std::make_unique<BipartiteVerifier>(role);
    case VerifierKind::CycleFree: return std::make_unique<CycleFreeVerifier>(role);
  }
  throw std::invalid_argument("unknown verifier");
}

std::unique_ptr<VertexProcess> VerifierProgram::init(const VertexInfo& info) const {
  const auto bound = radius_bound_.value_or(info.n > 0 ? info.n - 1 : 0);
  return make_verifier(kind_, ClusterRole{info.initiator, bound});
}

std::unique_ptr<VertexProcess> CompiledTesterProgram::init(const VertexInfo& info) const {
  return std::make_unique<CompiledProcess>(info, ShiftParams::for_graph(info.n, epsilon_ / 2), kind_);
}

TrialReport compiled_tester(const Graph& g, VerifierKind kind, const Rational& epsilon, std::uint64_t seed,
                            const RunConfig& base) {
  RunConfig cfg = base;
  cfg.seed = seed;
  return run(g, CompiledTesterProgram(kind, epsilon), cfg);
}

std::size_t compiled_tester_rounds(std::size_t n, const Rational& epsilon) {
  const auto params = ShiftParams::for_graph(n, epsilon / 2);
  return decomposition_rounds(params) + params.cap_steps + 1;
}

std::unique_ptr<VertexProcess> BootstrappedProgram::init(const VertexInfo& info) const {
  return std::make_unique<BootstrappedProcess>(info, ShiftParams::for_graph(info.n, epsilon_ / 2), *inner_);
}

TrialReport bootstrapped_tester(const Graph& g, std::shared_ptr<const VertexProgram> inner, const Rational& epsilon,
                                std::uint64_t seed, const RunConfig& base) {
  RunConfig cfg = base;
  cfg.seed = seed;
  return run(g, BootstrappedProgram(std::move(inner), epsilon), cfg);
}

void CorrectorProcess::receive(RoundContext& ctx) {
  DecompositionProcess::receive(ctx);
  if (!finished()) return;
  const auto& v = view();
  deleted_.clear();
  for (std::size_t p = 0; p < v.cut_port.size(); ++p) {
    const bool tree = v.parent_port == p || v.child_port[p];
    if (v.cut_port[p] || !tree) deleted_.push_back(p);
  }
  ctx.decide(Verdict::Accept);
}

std::unique_ptr<VertexProcess> CorrectorProgram::init(const VertexInfo& info) const {
  return std::make_unique<CorrectorProcess>(info, ShiftParams::for_graph(info.n, epsilon_));
}

std::vector<Edge> CorrectorOutput::deleted_edges() const {
  std::vector<Edge> out;
  for (VertexId v = 0; v < deleted.size(); ++v) {
    for (auto w : deleted[v]) {
      if (w >= deleted.size() || !std::binary_search(deleted[w].begin(), deleted[w].end(), v)) {
        throw ProtocolError("endpoints disagree on deleting " + std::to_string(v) + "-" + std::to_string(w));
      }
      if (v < w) out.push_back({v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CorrectorOutput cyclefree_corrector(const Graph& g, const Rational& epsilon, std::uint64_t seed,
                                    const RunConfig& base) {
  constexpr std::size_t kMaxAttempts = 64;
  const CorrectorProgram program(epsilon);
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RunConfig cfg = base;
    cfg.seed = restart_seed(seed, attempt);
    auto exec = execute(g, program, cfg);
    bool overflow = false;
    for (VertexId v = 0; v < g.n(); ++v) overflow |= exec.process<CorrectorProcess>(v).view().shift_overflow;
    if (overflow) continue;

    CorrectorOutput out;
    out.deleted.resize(g.n());
    std::set<VertexId> centers;
    for (VertexId v = 0; v < g.n(); ++v) {
      const auto& proc = exec.process<CorrectorProcess>(v);
      centers.insert(proc.view().center);
      for (auto p : proc.deleted_ports()) out.deleted[v].push_back(proc.view().neighbor_ids[p]);
      std::sort(out.deleted[v].begin(), out.deleted[v].end());
    }
    out.cluster_count = centers.size();
    out.rounds_used = exec.report.rounds_used;
    out.attempts = attempt + 1;
    out.seed = seed;
    return out;
  }
  throw std::runtime_error("corrector: shift cap exceeded in every attempt");
}

CorrectionCheck check_correction(const Graph& g, const CorrectorOutput& out, const Rational& epsilon) {
  CorrectionCheck c;
  const auto m = static_cast<double>(g.m());
  c.distance = g.m() + connected_components(g).count - g.n();
  c.deletion_bound = static_cast<double>(c.distance) + epsilon.value() * m;
  c.kept_bound = static_cast<double>(g.n()) + epsilon.value() * m;
  std::vector<Edge> deleted;
  try {
    deleted = out.deleted_edges();
  } catch (const ProtocolError&) {
    c.consistent = false;
    return c;
  }
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(deleted.begin(), deleted.end(), e)) kept.push_back(e);
  }
  c.deleted = deleted.size();
  c.kept = kept.size();
  c.acyclic = is_forest(g.n(), kept);
  return c;
}

void write_corrector_output(std::ostream& out, const CorrectorOutput& c) {
  for (const auto& e : c.deleted_edges()) out << "deleted " << e.u << ' ' << e.v << '\n';
}

}  // namespace dpt
