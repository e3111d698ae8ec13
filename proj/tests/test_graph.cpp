#include <doctest.h>

#include <sstream>

#include "dpt/graph.hpp"
#include "dpt/property.hpp"
#include "dpt/rational.hpp"
#include "dpt/rng.hpp"
#include "dpt/tree_pattern.hpp"

using namespace dpt;

TEST_SUITE("graph") {
  TEST_CASE("edge list: triangle") {
    const auto g = parse_edge_list("3 3\n0 1\n1 2\n2 0\n");
    CHECK(g.n() == 3);
    CHECK(g.m() == 3);
    CHECK(g == complete_graph(3));
    for (VertexId v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);
  }

  TEST_CASE("edge list: single isolated vertex") {
    const auto g = parse_edge_list("1 0\n");
    CHECK(g.n() == 1);
    CHECK(g.m() == 0);
    CHECK(g.degree(0) == 0);
  }

  TEST_CASE("edge list: duplicate edge reports the second line") {
    try {
      (void)parse_edge_list("3 2\n0 1\n0 1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS((void)parse_edge_list("3 2\n0 1\n1 0\n"), ParseError);
  }

  TEST_CASE("edge list: malformed inputs") {
    CHECK_THROWS_AS((void)parse_edge_list(""), ParseError);
    CHECK_THROWS_AS((void)parse_edge_list("3 1\n1 1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_edge_list("3 1\n0 3\n"), ParseError);
    CHECK_THROWS_AS((void)parse_edge_list("3 2\n0 1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_edge_list("3 1\n0 x\n"), ParseError);
    CHECK_THROWS_AS((void)parse_edge_list("3 1\n0 1 2\n"), ParseError);
    try {
      (void)parse_edge_list("4 1\n\n0 -1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  TEST_CASE("edge list round trip") {
    const auto g = disjoint_union(complete_graph(4), 3);
    std::stringstream ss;
    write_edge_list(ss, g);
    CHECK(load_edge_list(ss) == g);
  }

  TEST_CASE("from_edges rejects loops and duplicates") {
    const std::vector<Edge> loop{{1, 1}};
    CHECK_THROWS_AS((void)Graph::from_edges(2, loop), GraphError);
    const std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS((void)Graph::from_edges(2, dup), GraphError);
    const std::vector<Edge> range{{0, 5}};
    CHECK_THROWS_AS((void)Graph::from_edges(2, range), GraphError);
  }

  TEST_CASE("adjacency is sorted and symmetric") {
    const std::vector<Edge> e{{3, 0}, {2, 0}, {1, 0}, {1, 3}};
    const auto g = Graph::from_edges(4, e);
    const auto nb = g.neighbors(0);
    CHECK(std::vector<VertexId>(nb.begin(), nb.end()) == std::vector<VertexId>{1, 2, 3});
    std::size_t degree_sum = 0;
    for (VertexId v = 0; v < g.n(); ++v) {
      degree_sum += g.degree(v);
      for (auto w : g.neighbors(v)) {
        CHECK(g.has_edge(w, v));
        CHECK(g.neighbors(v)[g.port_of(v, w)] == w);
      }
    }
    CHECK(degree_sum == 2 * g.m());
    CHECK(g.port_of(2, 3) == g.degree(2));
  }

  TEST_CASE("components, induced subgraphs, unions") {
    const auto g = disjoint_union(cycle_graph(5), 3);
    CHECK(g.n() == 15);
    CHECK(g.m() == 15);
    const auto c = connected_components(g);
    CHECK(c.count == 3);
    CHECK(c.label[0] == 0);
    CHECK(c.label[5] == 1);
    CHECK(c.label[14] == 2);
    CHECK_FALSE(is_connected(g));
    CHECK(is_connected(cycle_graph(5)));
    const std::vector<VertexId> vs{5, 6, 7, 8, 9};
    const auto sub = induced_subgraph(g, vs);
    CHECK(sub.graph == cycle_graph(5));
    CHECK(sub.original == vs);
    const std::vector<Graph> parts{path_graph(2), star_graph(3)};
    const auto u = disjoint_union(parts);
    CHECK(u.n() == 6);
    CHECK(u.m() == 4);
  }

  TEST_CASE("named patterns") {
    CHECK(named_pattern("triangle") == complete_graph(3));
    CHECK(named_pattern("k3") == complete_graph(3));
    CHECK(named_pattern("c4") == cycle_graph(4));
    CHECK(named_pattern("k4").m() == 6);
    CHECK(named_pattern("p4").m() == 3);
    CHECK(named_pattern("paw").m() == 4);
    CHECK(named_pattern("diamond").m() == 5);
    CHECK(named_pattern("k13").max_degree() == 3);
    CHECK(named_pattern("claw") == named_pattern("k13"));
    CHECK(named_pattern("k2").m() == 1);
    CHECK(named_pattern("p3").m() == 2);
    CHECK_THROWS_AS((void)named_pattern("k5"), GraphError);
  }
}

TEST_SUITE("tree-pattern") {
  TEST_CASE("path and star") {
    const auto p = TreePattern::path(4);
    CHECK(p.k() == 4);
    CHECK(p.depth() == 3);
    CHECK(p.label_depth(3) == 3);
    CHECK(p.degree(0) == 1);
    CHECK(p.degree(1) == 2);
    CHECK(p.children(1) == std::vector<std::size_t>{2});
    const auto s = TreePattern::star(4);
    CHECK(s.is_star());
    CHECK(s.degree(0) == 3);
    CHECK(s.depth() == 1);
    CHECK_FALSE(p.is_star());
  }

  TEST_CASE("invalid parent maps are rejected") {
    CHECK_THROWS_AS(TreePattern({0, 2, 1}), GraphError);
    CHECK_THROWS_AS(TreePattern({0, 5}), GraphError);
  }

  TEST_CASE("file format round trip") {
    const auto t = TreePattern::parse("4\n1 0\n2 0\n3 1\n");
    CHECK(t.k() == 4);
    CHECK(t.parent(3) == 1);
    std::stringstream ss;
    t.write(ss);
    CHECK(TreePattern::parse(ss.str()) == t);
    CHECK(TreePattern::from_spec("path:3") == TreePattern::path(3));
    CHECK(TreePattern::from_spec("star:5") == TreePattern::star(5));
  }

  TEST_CASE("from_graph relabels in BFS order") {
    const auto t = TreePattern::from_graph(path_graph(3), 1);
    CHECK(t.k() == 3);
    CHECK(t.is_star());
    CHECK(t.to_graph().m() == 2);
    CHECK_THROWS_AS((void)TreePattern::from_graph(cycle_graph(3)), GraphError);
  }
}

TEST_SUITE("property") {
  TEST_CASE("parse names") {
    CHECK(PropertyId::parse("triangle").kind() == PropertyKind::TriangleFree);
    CHECK(PropertyId::parse("c4").pattern() == cycle_graph(4));
    CHECK(PropertyId::parse("bipartite").kind() == PropertyKind::Bipartite);
    CHECK(PropertyId::parse("cyclefree").kind() == PropertyKind::CycleFree);
    const auto h = PropertyId::parse("h4:paw");
    CHECK(h.kind() == PropertyKind::HFree);
    CHECK(h.name() == "h4:paw");
    const auto t = PropertyId::parse("tree:path:3");
    CHECK(t.kind() == PropertyKind::TreeFree);
    CHECK(t.tree().k() == 3);
    CHECK(t.name() == "tree:path:3");
    CHECK_THROWS_AS((void)PropertyId::parse("planar"), GraphError);
  }

  TEST_CASE("H pattern must be connected with 2..4 vertices") {
    CHECK_THROWS_AS((void)PropertyId::h_free(complete_graph(5)), GraphError);
    CHECK_THROWS_AS((void)PropertyId::h_free(disjoint_union(path_graph(2), 2)), GraphError);
    CHECK_NOTHROW((void)PropertyId::h_free(path_graph(2)));
  }
}

TEST_SUITE("rational") {
  TEST_CASE("parse and arithmetic") {
    CHECK(Rational::parse("1/3") == Rational(1, 3));
    CHECK(Rational::parse("2/6") == Rational(1, 3));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("1") == Rational(1, 1));
    CHECK_THROWS((void)Rational::parse("1/0"));
    CHECK_THROWS((void)Rational::parse("abc"));
    CHECK(Rational(1, 3).ceil_inverse_times(4) == 12);
    CHECK(Rational(1, 4).ceil_inverse_times(16) == 64);
    CHECK(Rational(1, 3).ceil_times(30) == 10);
    CHECK(Rational(1, 3).ceil_times(31) == 11);
    CHECK(Rational(1, 2) / 2 == Rational(1, 4));
    CHECK(Rational(1, 4) < Rational(1, 3));
    CHECK(Rational(1, 3).str() == "1/3");
    CHECK_FALSE(Rational(0, 1).in_unit_interval());
    CHECK_FALSE(Rational(3, 2).in_unit_interval());
  }
}

TEST_SUITE("rng") {
  TEST_CASE("derived streams are reproducible and separated") {
    auto a = derive_vertex_rng(7, 3, 5);
    auto b = derive_vertex_rng(7, 3, 5);
    auto c = derive_vertex_rng(7, 3, 6);
    auto d = derive_vertex_rng(7, 3, 5, 1);
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 16; ++i) {
      const auto x = a();
      CHECK(x == b());
      differs_c |= x != c();
      differs_d |= x != d();
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(derive_trial_seed(1, 0) != derive_trial_seed(1, 1));
  }

  TEST_CASE("below is in range and roughly uniform") {
    RandomStream r(42);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
      const auto x = r.below(7);
      REQUIRE(x < 7);
      ++counts[x];
    }
    for (auto c : counts) CHECK(std::abs(c - 10000) < 450);
    CHECK(r.below(1) == 0);
  }

  TEST_CASE("exponential mean") {
    RandomStream r(9);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const auto x = r.exponential(0.5);
      REQUIRE(x >= 0.0);
      sum += x;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.02));
  }
}
