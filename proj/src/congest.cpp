#include "dpt/congest.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace dpt {

std::size_t field_bits(std::uint64_t range) {
  if (range <= 2) return 1;
  return static_cast<std::size_t>(std::bit_width(range - 1));
}

Message& Message::push(FieldKind kind, std::uint64_t value) {
  if (count_ == kMaxFields) throw ProtocolError("message exceeds field capacity");
  fields_[count_++] = Field{kind, value};
  return *this;
}

std::size_t Message::bit_size(std::size_t n) const {
  const auto id_bits = field_bits(n);
  const auto rank_bits = field_bits(static_cast<std::uint64_t>(n) * n);
  std::size_t bits = 0;
  for (std::size_t i = 0; i < count_; ++i) {
    switch (fields_[i].kind) {
      case FieldKind::Id: bits += id_bits; break;
      case FieldKind::Rank: bits += rank_bits; break;
      case FieldKind::Bit: bits += 1; break;
    }
  }
  return bits;
}

bool operator==(const Message& a, const Message& b) {
  if (a.count_ != b.count_) return false;
  for (std::size_t i = 0; i < a.count_; ++i) {
    if (a.fields_[i].kind != b.fields_[i].kind || a.fields_[i].value != b.fields_[i].value) return false;
  }
  return true;
}

std::size_t default_bandwidth(std::size_t n) { return 4 * field_bits(n) + 8; }

std::size_t RoundContext::degree() const {
  return restricted_ ? port_map_.size() : sim_->g_.degree(vertex_);
}

std::size_t RoundContext::n() const { return sim_->g_.n(); }

std::size_t RoundContext::global_port(std::size_t port) const {
  if (port >= degree()) throw ProtocolError("port " + std::to_string(port) + " out of range at vertex " + std::to_string(vertex_));
  return restricted_ ? port_map_[port] : port;
}

const std::optional<Message>& RoundContext::inbox(std::size_t port) const {
  if (sending_) throw ProtocolError("inbox read during send phase");
  return sim_->inbox_[sim_->g_.slot_base(vertex_) + global_port(port)];
}

void RoundContext::send(std::size_t port, const Message& msg) {
  if (!sending_) throw ProtocolError("send outside the send phase");
  const auto n = sim_->g_.n();
  const auto n2 = static_cast<std::uint64_t>(n) * n;
  for (std::size_t i = 0; i < msg.size(); ++i) {
    const auto& f = msg[i];
    const bool ok = (f.kind == FieldKind::Id && f.value < std::max<std::uint64_t>(n, 1)) ||
                    (f.kind == FieldKind::Rank && f.value < std::max<std::uint64_t>(n2, 1)) ||
                    (f.kind == FieldKind::Bit && f.value <= 1);
    if (!ok) throw ProtocolError("field value out of range in message from vertex " + std::to_string(vertex_));
  }
  const auto bits = msg.bit_size(n);
  if (bits > sim_->limit_) {
    throw BandwidthViolation("vertex " + std::to_string(vertex_) + " sent " + std::to_string(bits) +
                             " bits in round " + std::to_string(round_) + " (limit " +
                             std::to_string(sim_->limit_) + ")");
  }
  sim_->max_bits_ = std::max(sim_->max_bits_, bits);
  sim_->outbox_[sim_->g_.slot_base(vertex_) + global_port(port)] = msg;
}

void RoundContext::send_all(const Message& msg) {
  for (std::size_t p = 0; p < degree(); ++p) send(p, msg);
}

void RoundContext::decide(Verdict v) {
  auto& slot = sim_->verdicts_[vertex_];
  if (!slot) slot = v;
}

RandomStream RoundContext::derive_stream(std::size_t round, std::uint64_t stream) const {
  return derive_vertex_rng(sim_->config_.seed, vertex_, round, stream);
}

bool RoundContext::decided() const { return sim_->verdicts_[vertex_].has_value(); }

RoundContext RoundContext::restricted(std::span<const std::size_t> ports, std::size_t round_offset,
                                      RandomStream& rng) const {
  RoundContext sub = *this;
  sub.port_map_ = ports;
  sub.restricted_ = true;
  sub.round_offset_ = round_offset;
  sub.rng_ = &rng;
  return sub;
}

Verdict TrialReport::verdict() const {
  for (const auto& v : verdicts) {
    if (v == Verdict::Reject) return Verdict::Reject;
  }
  return Verdict::Accept;
}

std::size_t TrialReport::reject_count() const {
  std::size_t c = 0;
  for (const auto& v : verdicts) c += v == Verdict::Reject;
  return c;
}

Simulator::Simulator(const Graph& g, const RunConfig& config)
    : g_(g), config_(config), limit_(config.bandwidth_limit ? config.bandwidth_limit : default_bandwidth(g.n())) {
  const auto slots = 2 * g.m();
  reverse_.resize(slots);
  for (VertexId v = 0; v < g.n(); ++v) {
    auto nb = g.neighbors(v);
    for (std::size_t p = 0; p < nb.size(); ++p) {
      reverse_[g.slot_base(v) + p] = g.slot_base(nb[p]) + g.port_of(nb[p], v);
    }
  }
  outbox_.resize(slots);
  inbox_.resize(slots);
  verdicts_.assign(g.n(), std::nullopt);
}

Execution Simulator::execute(const VertexProgram& program) {
  const auto n = g_.n();
  Execution exec;
  exec.processes.reserve(n);
  for (VertexId v = 0; v < n; ++v) {
    VertexInfo info{v, g_.degree(v), n, config_.initiator && *config_.initiator == v};
    exec.processes.push_back(program.init(info));
  }
  for (VertexId v = 0; v < n; ++v) {
    auto rng = derive_vertex_rng(config_.seed, v, 0);
    RoundContext ctx(this, v, 0, true, &rng);
    ctx.sending_ = false;
    exec.processes[v]->start(ctx);
  }
  auto running = [&](VertexId v) { return !verdicts_[v].has_value(); };
  auto any_running = [&] {
    for (VertexId v = 0; v < n; ++v)
      if (running(v)) return true;
    return false;
  };
  auto any_reject = [&] {
    for (const auto& v : verdicts_)
      if (v == Verdict::Reject) return true;
    return false;
  };

  std::size_t round = 0;
  std::vector<RandomStream> rngs(n);
  while (any_running() && !(config_.early_exit && any_reject())) {
    if (round == config_.max_rounds) {
      throw RoundLimitExceeded("no verdict from every vertex after " + std::to_string(round) + " rounds");
    }
    ++round;
    for (auto& m : outbox_) m.reset();
    for (VertexId v = 0; v < n; ++v) {
      if (!running(v)) continue;
      rngs[v] = derive_vertex_rng(config_.seed, v, round);
      RoundContext ctx(this, v, round, true, &rngs[v]);
      exec.processes[v]->send(ctx);
    }
    for (std::size_t s = 0; s < inbox_.size(); ++s) inbox_[reverse_[s]] = std::move(outbox_[s]);
    // Snapshot so a vertex deciding mid-phase does not change who receives.
    std::vector<char> active(n);
    for (VertexId v = 0; v < n; ++v) active[v] = running(v);
    for (VertexId v = 0; v < n; ++v) {
      if (!active[v]) continue;
      RoundContext ctx(this, v, round, false, &rngs[v]);
      exec.processes[v]->receive(ctx);
    }
  }
  exec.report.verdicts = verdicts_;
  exec.report.rounds_used = round;
  exec.report.max_bits_per_edge_round = max_bits_;
  exec.report.seed = config_.seed;
  return exec;
}

Execution execute(const Graph& g, const VertexProgram& program, const RunConfig& config) {
  Simulator sim(g, config);
  return sim.execute(program);
}

TrialReport run(const Graph& g, const VertexProgram& program, const RunConfig& config) {
  return execute(g, program, config).report;
}

}  // namespace dpt
