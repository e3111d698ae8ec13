#include "dpt/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>
#include <set>

namespace dpt {

ShiftParams ShiftParams::for_graph(std::size_t n, const Rational& epsilon) {
  if (!epsilon.in_unit_interval()) throw std::invalid_argument("epsilon must lie in (0, 1]");
  ShiftParams p;
  p.rate = epsilon.value() / 2.0;
  p.cap = 2.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2))) / p.rate;
  p.cap_steps = static_cast<std::size_t>(std::ceil(p.cap));
  return p;
}

std::size_t decomposition_rounds(const ShiftParams& params) { return params.cap_steps + 2; }

std::vector<std::size_t> ClusterView::internal_ports() const {
  std::vector<std::size_t> ports;
  for (std::size_t p = 0; p < cut_port.size(); ++p)
    if (!cut_port[p]) ports.push_back(p);
  return ports;
}

DecompositionProcess::DecompositionProcess(const VertexInfo& info, const ShiftParams& params)
    : self_(info.id), params_(params) {
  view_.neighbor_ids.assign(info.degree, 0);
  view_.cut_port.assign(info.degree, 0);
  view_.child_port.assign(info.degree, 0);
  view_.radius_bound = params.cap_steps;
}

void DecompositionProcess::send(RoundContext& ctx) {
  const auto r = ctx.round();
  const auto last_growth = params_.cap_steps + 1;
  if (r == 1) {
    shift_ = ctx.rng().exponential(params_.rate);
    if (shift_ > params_.cap) view_.shift_overflow = true;
    const auto whole = static_cast<std::size_t>(std::floor(std::min(shift_, params_.cap)));
    start_step_ = params_.cap_steps - std::min(whole, params_.cap_steps);
    ctx.send_all(Message().id(self_));
  } else if (r <= last_growth) {
    if (announce_) {
      for (std::size_t p = 0; p < ctx.degree(); ++p) {
        if (view_.parent_port != p) ctx.send(p, Message().id(view_.center));
      }
      announce_ = false;
    }
  } else if (r == last_growth + 1) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      ctx.send(p, Message().id(view_.center).bit(view_.parent_port == p));
    }
  }
}

void DecompositionProcess::receive(RoundContext& ctx) {
  const auto r = ctx.round();
  const auto last_growth = params_.cap_steps + 1;
  if (r == 1) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg) throw ProtocolError("decomposition: missing id on a port");
      view_.neighbor_ids[p] = static_cast<VertexId>(msg->value(0));
    }
  }
  if (r <= last_growth) {
    if (claimed_) return;
    const auto step = r - 1;
    std::optional<VertexId> best_center;
    std::optional<std::size_t> best_port;
    if (r >= 2) {
      for (std::size_t p = 0; p < ctx.degree(); ++p) {
        const auto& msg = ctx.inbox(p);
        if (!msg) continue;
        const auto c = static_cast<VertexId>(msg->value(0));
        // Smallest centre id wins; among its carriers the smallest neighbour id is the parent.
        if (!best_center || c < *best_center ||
            (c == *best_center && view_.neighbor_ids[p] < view_.neighbor_ids[*best_port])) {
          best_center = c;
          best_port = p;
        }
      }
    }
    if (start_step_ == step && (!best_center || self_ < *best_center)) {
      best_center = self_;
      best_port.reset();
    }
    if (best_center) {
      claimed_ = true;
      announce_ = true;
      view_.center = *best_center;
      view_.parent_port = best_port;
    } else if (r == last_growth) {
      throw std::logic_error("decomposition: vertex unclaimed after the last growth step");
    }
    return;
  }
  if (r == last_growth + 1) {
    for (std::size_t p = 0; p < ctx.degree(); ++p) {
      const auto& msg = ctx.inbox(p);
      if (!msg) throw ProtocolError("decomposition: missing cluster id on a port");
      view_.cut_port[p] = static_cast<VertexId>(msg->value(0)) != view_.center;
      view_.child_port[p] = msg->value(1) != 0;
    }
    finished_ = true;
  }
}

namespace {

class StandaloneDecomposition : public DecompositionProcess {
 public:
  using DecompositionProcess::DecompositionProcess;
  void receive(RoundContext& ctx) override {
    DecompositionProcess::receive(ctx);
    if (finished()) ctx.decide(Verdict::Accept);
  }
};

}  // namespace

std::unique_ptr<VertexProcess> DecompositionProgram::init(const VertexInfo& info) const {
  return std::make_unique<StandaloneDecomposition>(info, ShiftParams::for_graph(info.n, epsilon_));
}

std::size_t Decomposition::cluster_count() const {
  std::set<VertexId> centers(cluster_of.begin(), cluster_of.end());
  return centers.size();
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t attempt) {
  return attempt == 0 ? seed : mix64(seed ^ (0x5ca1ab1eULL * attempt));
}

Decomposition decompose(const Graph& g, const Rational& epsilon, std::uint64_t seed, const RunConfig& base) {
  constexpr std::size_t kMaxAttempts = 64;
  const DecompositionProgram program(epsilon);
  const auto params = ShiftParams::for_graph(g.n(), epsilon);
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RunConfig cfg = base;
    cfg.seed = restart_seed(seed, attempt);
    auto exec = execute(g, program, cfg);
    bool overflow = false;
    for (VertexId v = 0; v < g.n(); ++v) overflow |= exec.process<DecompositionProcess>(v).view().shift_overflow;
    if (overflow) continue;

    Decomposition d;
    d.cluster_of.resize(g.n());
    d.parent_of.resize(g.n());
    for (VertexId v = 0; v < g.n(); ++v) {
      const auto& view = exec.process<DecompositionProcess>(v).view();
      d.cluster_of[v] = view.center;
      if (view.parent_port) d.parent_of[v] = view.neighbor_ids[*view.parent_port];
      for (std::size_t p = 0; p < view.cut_port.size(); ++p) {
        if (view.cut_port[p] && v < view.neighbor_ids[p]) d.cut_edges.push_back({v, view.neighbor_ids[p]});
      }
    }
    std::sort(d.cut_edges.begin(), d.cut_edges.end());
    d.radius_bound = params.cap_steps;
    d.cluster_diameter_bound = 2 * params.cap_steps;
    d.rounds_used = exec.report.rounds_used;
    d.attempts = attempt + 1;
    d.seed = seed;
    return d;
  }
  throw std::runtime_error("decomposition: shift cap exceeded in every attempt");
}

DecompositionReport verify_decomposition(const Graph& g, const Decomposition& d, const Rational& epsilon) {
  (void)epsilon;
  DecompositionReport rep;
  const auto n = g.n();
  auto violate = [&](std::string s) { rep.violations.push_back(std::move(s)); };
  if (d.cluster_of.size() != n || d.parent_of.size() != n) {
    violate("partition is not total");
    return rep;
  }
  std::set<VertexId> centers;
  for (VertexId v = 0; v < n; ++v) {
    const auto c = d.cluster_of[v];
    if (c >= n) {
      violate("vertex " + std::to_string(v) + " has invalid cluster id");
      continue;
    }
    centers.insert(c);
    if (d.cluster_of[c] != c) violate("centre " + std::to_string(c) + " outside its cluster");
  }
  if (!rep.ok()) return rep;
  rep.cluster_count = centers.size();

  for (VertexId v = 0; v < n; ++v) {
    const auto c = d.cluster_of[v];
    const auto& parent = d.parent_of[v];
    if (v == c) {
      if (parent) violate("centre " + std::to_string(v) + " has a parent");
      continue;
    }
    if (!parent) {
      violate("vertex " + std::to_string(v) + " has no parent");
      continue;
    }
    if (!g.has_edge(v, *parent)) {
      violate("parent of " + std::to_string(v) + " is not a neighbour");
      continue;
    }
    if (d.cluster_of[*parent] != c) {
      violate("tree leaves cluster at " + std::to_string(v));
      continue;
    }
    VertexId cur = v;
    std::size_t steps = 0;
    while (cur != c && steps <= n && d.parent_of[cur] && d.cluster_of[*d.parent_of[cur]] == c) {
      cur = *d.parent_of[cur];
      ++steps;
    }
    if (cur != c) violate("parent pointers from " + std::to_string(v) + " do not reach the centre");
  }

  std::set<Edge> cut(d.cut_edges.begin(), d.cut_edges.end());
  for (const auto& e : cut) {
    if (!g.has_edge(e.u, e.v)) violate("cut edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in graph");
  }
  for (const auto& e : g.edges()) {
    const bool internal = d.cluster_of[e.u] == d.cluster_of[e.v];
    const bool marked = cut.count(e) > 0;
    if (internal && marked) violate("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " both internal and cut");
    if (!internal && !marked) violate("unclassified edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
  }
  rep.cut_fraction = g.m() ? static_cast<double>(cut.size()) / static_cast<double>(g.m()) : 0.0;

  // Strong diameter via BFS inside each cluster.
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::vector<VertexId> touched;
  auto bfs = [&](VertexId src) {
    for (auto t : touched) dist[t] = SIZE_MAX;
    touched.clear();
    std::queue<VertexId> q;
    dist[src] = 0;
    touched.push_back(src);
    q.push(src);
    std::size_t ecc = 0;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      ecc = std::max(ecc, dist[v]);
      for (auto w : g.neighbors(v)) {
        if (d.cluster_of[w] != d.cluster_of[src] || dist[w] != SIZE_MAX) continue;
        dist[w] = dist[v] + 1;
        touched.push_back(w);
        q.push(w);
      }
    }
    return ecc;
  };
  std::vector<std::vector<VertexId>> members(n);
  for (VertexId v = 0; v < n; ++v) members[d.cluster_of[v]].push_back(v);
  for (auto c : centers) {
    const auto ecc = bfs(c);
    if (touched.size() != members[c].size()) {
      violate("cluster " + std::to_string(c) + " is not connected");
      continue;
    }
    rep.max_center_eccentricity = std::max(rep.max_center_eccentricity, ecc);
    if (ecc > d.radius_bound) violate("centre eccentricity of cluster " + std::to_string(c) + " exceeds the bound");
    std::size_t diam = ecc;
    for (auto v : members[c]) diam = std::max(diam, bfs(v));
    rep.max_cluster_diameter = std::max(rep.max_cluster_diameter, diam);
    if (diam > d.cluster_diameter_bound) violate("strong diameter of cluster " + std::to_string(c) + " exceeds the bound");
  }
  return rep;
}

void write_decomposition(std::ostream& out, const Decomposition& d) {
  for (VertexId v = 0; v < d.cluster_of.size(); ++v) {
    out << v << ' ' << d.cluster_of[v] << ' ';
    if (d.parent_of[v]) {
      out << *d.parent_of[v];
    } else {
      out << -1;
    }
    out << '\n';
  }
  for (const auto& e : d.cut_edges) out << "cut " << e.u << ' ' << e.v << '\n';
}

}  // namespace dpt
