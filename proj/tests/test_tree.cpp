#include <doctest.h>

#include <cmath>
#include <deque>
#include <set>

#include "dpt/generators.hpp"
#include "dpt/oracles.hpp"
#include "dpt/tree_tester.hpp"
#include "support.hpp"

using namespace dpt;

namespace {

using Task = std::pair<std::size_t, VertexId>;  // (label, vertex)

// Exact success probability of the pending depth-first tasks given the
// labelled set, enumerating every draw tuple.
double success(const Graph& g, const TreePattern& t, std::deque<Task> tasks, std::set<VertexId> labelled) {
  if (tasks.empty()) return 1.0;
  const auto [i, v] = tasks.front();
  tasks.pop_front();
  if (labelled.count(v)) return 0.0;
  labelled.insert(v);
  const auto children = t.children(i);
  if (children.empty()) return success(g, t, tasks, labelled);
  const auto d = g.degree(v);
  if (d == 0) return 0.0;
  const auto l = children.size();
  std::size_t outcomes = 1;
  for (std::size_t j = 0; j < l; ++j) outcomes *= d;
  double p = 0;
  for (std::size_t code = 0; code < outcomes; ++code) {
    auto next = tasks;
    auto c = code;
    std::vector<Task> drawn;
    for (std::size_t j = 0; j < l; ++j) {
      drawn.push_back({children[j], g.neighbors(v)[c % d]});
      c /= d;
    }
    for (auto it = drawn.rbegin(); it != drawn.rend(); ++it) next.push_front(*it);
    p += success(g, t, next, labelled);
  }
  return p / static_cast<double>(outcomes);
}

double rooted(const Graph& g, const TreePattern& t, VertexId v) { return success(g, t, {{0, v}}, {}); }

double attempt_probability(const Graph& g, const TreePattern& t) {
  double p = 0;
  for (const auto& e : g.edges()) p += (rooted(g, t, e.u) + rooted(g, t, e.v)) / 2.0;
  return p / static_cast<double>(g.m());
}

bool within_sigma(double observed, double p, std::size_t samples, double k) {
  return std::abs(observed - p) <= k * std::sqrt(p * (1 - p) / static_cast<double>(samples)) + 1e-12;
}

}  // namespace

TEST_SUITE("tree-global") {
  TEST_CASE("iteration count and query budget") {
    CHECK(tree_iterations(2, Rational(1, 1)) == 16);
    CHECK(tree_iterations(3, Rational(1, 2)) == 19683ull * 8);
    CHECK(tree_iterations(3, Rational(1, 3)) == 19683ull * 27);
    CHECK(tree_query_budget(3, Rational(1, 2)) == doctest::Approx(2.0 * 59049 * 8));
    CHECK(tree_iterations(6, Rational(1, 3)) == UINT64_MAX);
  }

  TEST_CASE("oracle counts every query") {
    const auto g = path_graph(3);
    QueryOracle o(g);
    CHECK(o.degree(1) == 2);
    CHECK(o.neighbor(1, 1) == 2);
    RandomStream rng(0);
    const auto e = o.random_edge(rng);
    CHECK(g.has_edge(e.u, e.v));
    CHECK(o.query_count() == 3);
  }

  TEST_CASE("single edge pattern and revisits") {
    const auto t = TreePattern::path(2);
    const auto g = path_graph(2);
    QueryOracle o(g);
    RandomStream rng(0);
    TreeLabels labels;
    CHECK(recursive_tree_exclusion(t, 0, 0, labels, o, rng));
    CHECK(labels.size() == 2);
    CHECK_FALSE(recursive_tree_exclusion(t, 0, 0, labels, o, rng));
    TreeLabels fresh;
    const Graph isolated(1);
    QueryOracle o2(isolated);
    CHECK_FALSE(recursive_tree_exclusion(t, 0, 0, fresh, o2, rng));
  }

  TEST_CASE("exact per-attempt probabilities") {
    CHECK(attempt_probability(path_graph(3), TreePattern::path(3)) == doctest::Approx(0.25));
    CHECK(rooted(complete_graph(3), TreePattern::star(3), 0) == doctest::Approx(0.5));
    CHECK(attempt_probability(star_graph(10), TreePattern::path(4)) == 0.0);
  }

  TEST_CASE("attempt frequencies match the enumeration") {
    struct Case {
      Graph g;
      TreePattern t;
    };
    const std::vector<Case> cases = {
        {path_graph(3), TreePattern::path(3)},
        {complete_graph(3), TreePattern::star(3)},
        {cycle_graph(5), TreePattern::path(4)},
        {gen_gnm(7, 10, 3), TreePattern::parse("4\n1 0\n2 0\n3 1\n")},
        {complete_graph(4), TreePattern::star(4)},
    };
    for (std::size_t c = 0; c < cases.size(); ++c) {
      const auto& [g, t] = cases[c];
      const double p = attempt_probability(g, t);
      QueryOracle o(g);
      RandomStream rng(c + 1);
      const std::size_t attempts = 100000;
      std::size_t hits = 0;
      for (std::size_t i = 0; i < attempts; ++i) hits += tree_attempt(t, o, rng);
      CAPTURE(c);
      CHECK(within_sigma(static_cast<double>(hits) / attempts, p, attempts, 3));
    }
  }

  TEST_CASE("single P3: rejection probability over a bounded run") {
    const auto g = path_graph(3);
    const auto t = TreePattern::path(3);
    const double p = attempt_probability(g, t);
    const std::uint64_t cap = 3;
    const double reject = 1 - std::pow(1 - p, static_cast<double>(cap));
    std::size_t rejects = 0;
    const std::size_t trials = 20000;
    for (std::size_t s = 0; s < trials; ++s) {
      RandomStream rng(s);
      rejects += global_tree_tester(g, t, Rational(1, 2), rng, cap).verdict == Verdict::Reject;
    }
    CHECK(within_sigma(static_cast<double>(rejects) / trials, reject, trials, 3));
  }

  TEST_CASE("T-free inputs never reject, queries stay within budget") {
    const auto t = TreePattern::path(4);
    const auto g = star_graph(10);
    RandomStream rng(5);
    const auto r = global_tree_tester(g, t, Rational(1, 2), rng, 10000);
    CHECK(r.verdict == Verdict::Accept);
    CHECK(r.attempts == 10000);
    CHECK(static_cast<double>(r.queries) <= tree_query_budget(4, Rational(1, 2)));
  }

  TEST_CASE("disjoint P3 copies are rejected") {
    const auto g = gen_disjoint_copies(path_graph(3), 40).graph;
    const auto t = TreePattern::path(3);
    std::size_t rejects = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      RandomStream rng(s);
      const auto r = global_tree_tester(g, t, Rational(1, 2), rng);
      rejects += r.verdict == Verdict::Reject;
      CHECK(static_cast<double>(r.queries) <= tree_query_budget(3, Rational(1, 2)));
    }
    CHECK(rejects == 100);
  }
}

TEST_SUITE("tree-distributed") {
  TEST_CASE("phases and rounds") {
    const TreeTesterProgram p(TreePattern::path(3), Rational(1, 2));
    CHECK(p.phase_rounds() == 6);
    CHECK(p.phases() == 1024);
    DistributedTreeOptions small;
    small.phase_cap = 7;
    const TreeTesterProgram q(TreePattern::path(2), Rational(1, 1), small);
    CHECK(q.phases() == 7);
    const TreeTesterProgram r(TreePattern::path(2), Rational(1, 1));
    CHECK(r.phases() == 16);
  }

  TEST_CASE("single edge pattern rejects in the first phase") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = gen_gnm(30, 40, seed);
      RunConfig cfg;
      cfg.seed = seed;
      const auto full = run(g, TreeTesterProgram(TreePattern::path(2), Rational(1, 2)), cfg);
      CHECK(full.verdict() == Verdict::Reject);
      cfg.early_exit = true;
      // The root decides in the last-but-one round of its phase.
      const auto r = run(g, TreeTesterProgram(TreePattern::path(2), Rational(1, 2)), cfg);
      CHECK(r.verdict() == Verdict::Reject);
      CHECK(r.rounds_used == 3);
    }
  }

  TEST_CASE("T-free inputs accept after exactly phases * 2k rounds") {
    DistributedTreeOptions opt;
    opt.phase_cap = 20;
    const TreeTesterProgram p(TreePattern::path(4), Rational(1, 2), opt);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RunConfig cfg;
      cfg.seed = seed;
      const auto g = disjoint_union(star_graph(6), 5);
      const auto r = run(g, p, cfg);
      CHECK(r.verdict() == Verdict::Accept);
      CHECK(r.rounds_used == 20 * 8);
      CHECK(r.max_bits_per_edge_round <= default_bandwidth(g.n()));
    }
  }

  TEST_CASE("one rooted phase realises one global attempt from the root") {
    const auto g = gen_gnm(7, 10, 3);
    const auto t = TreePattern::parse("4\n1 0\n2 0\n3 1\n");
    DistributedTreeOptions opt;
    opt.phase_cap = 1;
    opt.single_root = true;
    const TreeTesterProgram p(t, Rational(1, 2), opt);
    for (VertexId v = 0; v < g.n(); ++v) {
      const double exact = rooted(g, t, v);
      std::size_t rejects = 0;
      const std::size_t trials = 6000;
      for (std::size_t s = 0; s < trials; ++s) {
        RunConfig cfg;
        cfg.seed = s;
        cfg.initiator = v;
        rejects += run(g, p, cfg).verdict() == Verdict::Reject;
      }
      CAPTURE(v);
      CHECK(within_sigma(static_cast<double>(rejects) / trials, exact, trials, 4));
    }
  }

  TEST_CASE("disjoint P3 copies are rejected") {
    const auto g = gen_disjoint_copies(path_graph(3), 40).graph;
    const TreeTesterProgram p(TreePattern::path(3), Rational(1, 2));
    std::size_t rejects = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RunConfig cfg;
      cfg.seed = seed;
      cfg.early_exit = true;
      const auto r = run(g, p, cfg);
      rejects += r.verdict() == Verdict::Reject;
      CHECK(r.rounds_used % 6 == 5);
    }
    CHECK(rejects == 100);
  }

  TEST_CASE("members accept for every seed") {
    const auto prop = PropertyId::tree_free(TreePattern::star(4));
    DistributedTreeOptions opt;
    opt.phase_cap = 30;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto g = gen_property_instance(prop, 40, seed);
      REQUIRE(dist_to_property(g, prop) == 0);
      RunConfig cfg;
      cfg.seed = seed;
      CHECK(run(g, TreeTesterProgram(TreePattern::star(4), Rational(1, 3), opt), cfg).verdict() == Verdict::Accept);
    }
  }
}
