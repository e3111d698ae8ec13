#pragma once

// Synchronous CONGEST execution engine.
//
// A run proceeds in rounds. In round r every running vertex first executes
// its send phase (local computation, then at most one message per incident
// port), messages are delivered, and then every running vertex executes its
// receive phase on the messages that just arrived. A vertex that decides
// (ACCEPT or REJECT) halts: it is not stepped again and sends nothing more.
// Vertices know n and their own degree; neighbour identities must be learned
// through messages.

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dpt/graph.hpp"
#include "dpt/rng.hpp"

namespace dpt {

enum class Verdict : std::uint8_t { Accept, Reject };

enum class FieldKind : std::uint8_t { Id, Rank, Bit };

struct Field {
  FieldKind kind = FieldKind::Bit;
  std::uint64_t value = 0;
};

/// ceil(log2(x)) with a minimum of 1 bit.
std::size_t field_bits(std::uint64_t range);

/// A bounded sequence of typed fields. Width per field: vertex id
/// ceil(log2 n) bits, rank ceil(log2 n^2) bits, flag 1 bit.
class Message {
 public:
  static constexpr std::size_t kMaxFields = 6;

  Message& id(std::uint64_t v) { return push(FieldKind::Id, v); }
  Message& rank(std::uint64_t r) { return push(FieldKind::Rank, r); }
  Message& bit(bool b) { return push(FieldKind::Bit, b ? 1 : 0); }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] const Field& operator[](std::size_t i) const { return fields_[i]; }
  [[nodiscard]] std::uint64_t value(std::size_t i) const { return fields_[i].value; }
  [[nodiscard]] std::size_t bit_size(std::size_t n) const;

  friend bool operator==(const Message& a, const Message& b);

 private:
  Message& push(FieldKind kind, std::uint64_t value);

  std::array<Field, kMaxFields> fields_{};
  std::uint8_t count_ = 0;
};

class BandwidthViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RoundLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default per-message budget: 4 ceil(log2 n) + 8 bits.
std::size_t default_bandwidth(std::size_t n);

struct VertexInfo {
  VertexId id = 0;
  std::size_t degree = 0;
  std::size_t n = 0;
  /// Set for the designated initiator of a run (e.g. a cluster centre).
  bool initiator = false;
};

class Simulator;

/// Per-vertex view of one round. Ports index the vertex's incident edges
/// 0..degree-1 (sorted by neighbour id, which the vertex does not see).
class RoundContext {
 public:
  [[nodiscard]] std::size_t round() const { return round_ - round_offset_; }
  [[nodiscard]] VertexId id() const { return vertex_; }
  [[nodiscard]] std::size_t degree() const;
  [[nodiscard]] std::size_t n() const;

  /// Message received on `port` this round (receive phase only).
  [[nodiscard]] const std::optional<Message>& inbox(std::size_t port) const;
  /// Queue a message on `port` (send phase only). Enforces the bandwidth limit.
  void send(std::size_t port, const Message& msg);
  void send_all(const Message& msg);

  RandomStream& rng() { return *rng_; }
  /// The stream derive_vertex_rng(run seed, id(), round, stream); lets a
  /// process keep phases on separate streams.
  [[nodiscard]] RandomStream derive_stream(std::size_t round, std::uint64_t stream) const;
  void decide(Verdict v);
  [[nodiscard]] bool decided() const;

  /// A view that only exposes the given ports (renumbered 0..k-1), reports
  /// rounds relative to `round_offset`, and draws from `rng`.
  [[nodiscard]] RoundContext restricted(std::span<const std::size_t> ports, std::size_t round_offset,
                                        RandomStream& rng) const;

 private:
  friend class Simulator;
  RoundContext(Simulator* sim, VertexId v, std::size_t round, bool sending, RandomStream* rng)
      : sim_(sim), vertex_(v), round_(round), sending_(sending), rng_(rng) {}

  [[nodiscard]] std::size_t global_port(std::size_t port) const;

  Simulator* sim_;
  VertexId vertex_;
  std::size_t round_;
  bool sending_;
  RandomStream* rng_;
  std::span<const std::size_t> port_map_{};
  bool restricted_ = false;
  std::size_t round_offset_ = 0;
};

/// State machine run at one vertex.
class VertexProcess {
 public:
  virtual ~VertexProcess() = default;
  /// Called once before round 1 (round() == 0); may decide, may not send.
  virtual void start(RoundContext&) {}
  virtual void send(RoundContext& ctx) = 0;
  virtual void receive(RoundContext& ctx) = 0;
};

/// Factory of per-vertex processes; holds only the configuration shared by
/// all vertices.
class VertexProgram {
 public:
  virtual ~VertexProgram() = default;
  [[nodiscard]] virtual std::unique_ptr<VertexProcess> init(const VertexInfo& info) const = 0;
};

struct RunConfig {
  /// Bits per message; 0 selects default_bandwidth(n).
  std::size_t bandwidth_limit = 0;
  std::size_t max_rounds = 10'000'000;
  std::uint64_t seed = 0;
  /// Stop after the first round in which some vertex rejects.
  bool early_exit = false;
  std::optional<VertexId> initiator;
};

struct TrialReport {
  std::vector<std::optional<Verdict>> verdicts;
  std::size_t rounds_used = 0;
  std::size_t max_bits_per_edge_round = 0;
  std::uint64_t seed = 0;

  [[nodiscard]] Verdict verdict() const;
  [[nodiscard]] std::size_t reject_count() const;
  friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct Execution {
  TrialReport report;
  std::vector<std::unique_ptr<VertexProcess>> processes;

  template <class P>
  [[nodiscard]] const P& process(VertexId v) const {
    return dynamic_cast<const P&>(*processes[v]);
  }
};

Execution execute(const Graph& g, const VertexProgram& program, const RunConfig& config);
TrialReport run(const Graph& g, const VertexProgram& program, const RunConfig& config);

/// Engine internals; exposed only for RoundContext.
class Simulator {
 public:
  Simulator(const Graph& g, const RunConfig& config);
  Execution execute(const VertexProgram& program);

 private:
  friend class RoundContext;

  const Graph& g_;
  RunConfig config_;
  std::size_t limit_;
  std::vector<std::size_t> reverse_;  // slot -> slot of the same edge at the other endpoint
  std::vector<std::optional<Message>> outbox_;
  std::vector<std::optional<Message>> inbox_;
  std::vector<std::optional<Verdict>> verdicts_;
  std::size_t max_bits_ = 0;
};

}  // namespace dpt
