#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "dpt/compiler.hpp"
#include "dpt/generators.hpp"
#include "dpt/oracles.hpp"
#include "dpt/subgraph_testers.hpp"

using namespace dpt;

namespace {

TrialReport run_verifier(const Graph& g, VerifierKind kind, VertexId initiator,
                         std::optional<std::size_t> radius = {}) {
  RunConfig cfg;
  cfg.initiator = initiator;
  return run(g, VerifierProgram(kind, radius), cfg);
}

class AlwaysAccept : public VertexProgram {
  struct P : VertexProcess {
    void start(RoundContext& ctx) override { ctx.decide(Verdict::Accept); }
    void send(RoundContext&) override {}
    void receive(RoundContext&) override {}
  };

 public:
  std::unique_ptr<VertexProcess> init(const VertexInfo&) const override { return std::make_unique<P>(); }
};

// Records what every inner instance was told at init.
class Spy : public VertexProgram {
 public:
  Spy(std::shared_ptr<const VertexProgram> inner, std::shared_ptr<std::vector<VertexInfo>> log)
      : inner_(std::move(inner)), log_(std::move(log)) {}
  std::unique_ptr<VertexProcess> init(const VertexInfo& info) const override {
    log_->push_back(info);
    return inner_->init(info);
  }

 private:
  std::shared_ptr<const VertexProgram> inner_;
  std::shared_ptr<std::vector<VertexInfo>> log_;
};

}  // namespace

TEST_SUITE("verifiers") {
  TEST_CASE("bipartite verifier") {
    CHECK(run_verifier(cycle_graph(6), VerifierKind::Bipartite, 0).verdict() == Verdict::Accept);
    for (VertexId s = 0; s < 5; ++s) CHECK(run_verifier(cycle_graph(5), VerifierKind::Bipartite, s).verdict() == Verdict::Reject);
    const auto edge = run_verifier(path_graph(2), VerifierKind::Bipartite, 0);
    CHECK(edge.verdict() == Verdict::Accept);
    CHECK(edge.rounds_used <= 2);
    CHECK(run_verifier(complete_graph(4), VerifierKind::Bipartite, 2).verdict() == Verdict::Reject);
    CHECK(run_verifier(gen_property_instance(PropertyId::bipartite(), 30, 1), VerifierKind::Bipartite, 3).verdict() ==
          Verdict::Accept);
  }

  TEST_CASE("cycle-free verifier") {
    CHECK(run_verifier(star_graph(6), VerifierKind::CycleFree, 0).verdict() == Verdict::Accept);
    CHECK(run_verifier(star_graph(6), VerifierKind::CycleFree, 4).verdict() == Verdict::Accept);
    for (VertexId s = 0; s < 3; ++s)
      CHECK(run_verifier(complete_graph(3), VerifierKind::CycleFree, s).verdict() == Verdict::Reject);
    CHECK(run_verifier(cycle_graph(8), VerifierKind::CycleFree, 0).verdict() == Verdict::Reject);
    for (std::size_t d = 1; d <= 12; ++d) {
      const auto r = run_verifier(path_graph(d + 1), VerifierKind::CycleFree, 0, d);
      CHECK(r.verdict() == Verdict::Accept);
      CHECK(r.rounds_used == d + 1);
    }
  }

  TEST_CASE("verifiers agree with the oracles on random connected graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto g = gen_gnm(12, 11 + seed % 6, seed);
      if (!is_connected(g)) continue;
      CAPTURE(seed);
      CHECK((run_verifier(g, VerifierKind::Bipartite, 0).verdict() == Verdict::Accept) == is_bipartite(g));
      CHECK((run_verifier(g, VerifierKind::CycleFree, 0).verdict() == Verdict::Accept) == is_forest(g.n(), g.edges()));
    }
  }
}

TEST_SUITE("compiled-tester") {
  TEST_CASE("members always accept, with the exact round count") {
    const Rational eps(1, 4);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto tree = gen_property_instance(PropertyId::cycle_free(), 60, seed);
      const auto bip = compiled_tester(tree, VerifierKind::Bipartite, eps, seed);
      CHECK(bip.verdict() == Verdict::Accept);
      CHECK(bip.rounds_used == compiled_tester_rounds(60, eps));
      CHECK(compiled_tester(tree, VerifierKind::CycleFree, eps, seed).verdict() == Verdict::Accept);
      const auto bg = gen_property_instance(PropertyId::bipartite(), 60, seed);
      CHECK(compiled_tester(bg, VerifierKind::Bipartite, eps, seed).verdict() == Verdict::Accept);
    }
  }

  TEST_CASE("round count at n = 90, eps = 1/4") {
    // cap_steps = ceil(2 ln 90 / (1/16)) = 144; 146 decomposition rounds + 145 verifier rounds.
    CHECK(compiled_tester_rounds(90, Rational(1, 4)) == 291);
  }

  TEST_CASE("disjoint triangles are rejected") {
    const auto g = gen_disjoint_copies(complete_graph(3), 30).graph;
    std::size_t rejects = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      rejects += compiled_tester(g, VerifierKind::Bipartite, Rational(1, 4), seed).verdict() == Verdict::Reject;
    CHECK(static_cast<double>(rejects) / 200 >= 2.0 / 3.0);
  }
}

TEST_SUITE("bootstrapped") {
  TEST_CASE("trivial inner accepts members") {
    const auto g = gen_property_instance(PropertyId::cycle_free(), 40, 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      CHECK(bootstrapped_tester(g, std::make_shared<AlwaysAccept>(), Rational(1, 3), seed).verdict() ==
            Verdict::Accept);
  }

  TEST_CASE("cycle-free verifier as inner on disjoint triangles") {
    const auto g = gen_disjoint_copies(complete_graph(3), 30).graph;
    const auto inner = std::make_shared<VerifierProgram>(VerifierKind::CycleFree);
    std::size_t rejects = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      rejects += bootstrapped_tester(g, inner, Rational(1, 4), seed).verdict() == Verdict::Reject;
    CHECK(static_cast<double>(rejects) / 200 >= 2.0 / 3.0);
  }

  TEST_CASE("a single cluster reproduces a plain run of the inner tester") {
    const auto g = complete_graph(5);
    const Rational eps(1, 1);
    const auto decomp_rounds = decomposition_rounds(ShiftParams::for_graph(g.n(), eps / 2));
    const auto inner = std::make_shared<TriangleTesterProgram>(Rational(1, 2));
    std::size_t single = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto log = std::make_shared<std::vector<VertexInfo>>();
      const auto boot = bootstrapped_tester(g, std::make_shared<Spy>(inner, log), eps, seed);
      REQUIRE(log->size() == g.n());
      std::size_t initiators = 0;
      bool full = true;
      VertexId centre = 0;
      for (const auto& info : *log) {
        if (info.initiator) {
          ++initiators;
          centre = info.id;
        }
        full &= info.degree == g.degree(info.id);
      }
      if (initiators != 1 || !full) continue;
      ++single;
      RunConfig cfg;
      cfg.seed = seed;
      cfg.initiator = centre;
      const auto plain = run(g, *inner, cfg);
      CHECK(boot.verdicts == plain.verdicts);
      CHECK(boot.rounds_used == decomp_rounds + plain.rounds_used);
    }
    CHECK(single >= 20);
  }
}

TEST_SUITE("corrector") {
  TEST_CASE("forest input: only cut edges are deleted") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = gen_property_instance(PropertyId::cycle_free(), 80, seed);
      const Rational eps(1, 5);
      const auto out = cyclefree_corrector(g, eps, seed);
      const auto d = decompose(g, eps, seed);
      CHECK(out.deleted_edges() == d.cut_edges);
      CHECK(check_correction(g, out, eps).acyclic);
    }
  }

  TEST_CASE("deleted = m - n + clusters, output is a forest, rerun is identical") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto g = gen_gnm(120, 300 + 10 * seed, seed);
      const Rational eps(1, 5);
      const auto out = cyclefree_corrector(g, eps, seed);
      const auto check = check_correction(g, out, eps);
      CHECK(check.consistent);
      CHECK(check.acyclic);
      CHECK(check.deleted == g.m() - g.n() + out.cluster_count);
      CHECK(check.within_kept_bound());
      CHECK(cyclefree_corrector(g, eps, seed).deleted == out.deleted);
    }
  }

  TEST_CASE("K3 at eps = 1/2 matches the enumerated outcome distribution") {
    // Shifts are Exp(1/4) conditioned on not exceeding the cap 2 ln 3 / (1/4);
    // vertex v joins argmax floor(shift_u) - dist(u, v), ties to the lower id.
    const double rate = 0.25;
    const double cap = 2 * std::log(3.0) / rate;
    const auto kmax = static_cast<int>(std::floor(cap));
    const double z = 1 - std::exp(-rate * cap);
    std::vector<double> pk(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
      const double hi = std::min(cap, static_cast<double>(k + 1));
      pk[k] = (std::exp(-rate * k) - std::exp(-rate * hi)) / z;
    }
    std::array<double, 4> exact{};
    for (int a = 0; a <= kmax; ++a)
      for (int b = 0; b <= kmax; ++b)
        for (int c = 0; c <= kmax; ++c) {
          const int key[3] = {a, b, c};
          std::set<int> centres;
          for (int v = 0; v < 3; ++v) {
            int best = v;
            for (int u = 0; u < 3; ++u) {
              const int ku = key[u] - (u == v ? 0 : 1);
              const int kb = key[best] - (best == v ? 0 : 1);
              if (ku > kb || (ku == kb && u < best)) best = u;
            }
            centres.insert(best);
          }
          // Cut edges plus one non-tree edge per cycle: |E'| = 3 - 3 + clusters.
          exact[centres.size()] += pk[a] * pk[b] * pk[c];
        }
    CHECK(exact[1] + exact[2] + exact[3] == doctest::Approx(1.0));

    const auto g = complete_graph(3);
    const Rational eps(1, 2);
    const int runs = 20000;
    std::array<int, 4> seen{};
    for (int s = 0; s < runs; ++s) {
      const auto out = cyclefree_corrector(g, eps, static_cast<std::uint64_t>(s));
      const auto check = check_correction(g, out, eps);
      REQUIRE(check.acyclic);
      REQUIRE(check.deleted >= 1);
      REQUIRE(check.deleted <= 3);
      ++seen[check.deleted];
    }
    for (int size = 1; size <= 3; ++size) {
      const double p = exact[size];
      const double sigma = std::sqrt(p * (1 - p) / runs);
      CAPTURE(size);
      CHECK(std::abs(static_cast<double>(seen[size]) / runs - p) <= 3 * sigma + 1e-9);
    }
    // The bound 1 + 0.5 * 3 = 2.5 fails exactly when all three shifts floor alike.
    CHECK(exact[3] == doctest::Approx(0.0249).epsilon(0.05));
  }

  TEST_CASE("disjoint triangles: mean deletions within the bound") {
    const auto g = gen_disjoint_copies(complete_graph(3), 40).graph;
    const Rational eps(1, 5);
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto check = check_correction(g, cyclefree_corrector(g, eps, seed), eps);
      CHECK(check.acyclic);
      CHECK(check.distance == 40);
      sum += static_cast<double>(check.deleted);
    }
    CHECK(sum / 50 <= 40 + 0.2 * 120);
  }

  TEST_CASE("disagreeing endpoints are reported") {
    CorrectorOutput out;
    out.deleted = {{1}, {}, {}};
    CHECK_THROWS_AS((void)out.deleted_edges(), ProtocolError);
    CHECK_FALSE(check_correction(path_graph(3), out, Rational(1, 2)).consistent);
  }

  TEST_CASE("output format") {
    CorrectorOutput out;
    out.deleted = {{2}, {2}, {0, 1}};
    std::stringstream ss;
    write_corrector_output(ss, out);
    CHECK(ss.str() == "deleted 0 2\ndeleted 1 2\n");
  }
}
