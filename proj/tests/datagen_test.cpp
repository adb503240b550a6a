#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "coarsen/datagen.hpp"
#include "support.hpp"

using namespace coarsen;

TEST_SUITE_BEGIN("datagen");

TEST_CASE("model names round-trip through the parser") {
  for (GraphModel m : {GraphModel::ErdosRenyi, GraphModel::BarabasiAlbert,
                       GraphModel::WattsStrogatz, GraphModel::Geometric})
    CHECK(parse_graph_model(graph_model_name(m)) == m);
  CHECK(graph_model_name(GraphModel::ErdosRenyi) == "er");
  CHECK(graph_model_name(GraphModel::BarabasiAlbert) == "ba");
  CHECK(graph_model_name(GraphModel::WattsStrogatz) == "ws");
  CHECK(graph_model_name(GraphModel::Geometric) == "geo");
  CHECK_THROWS_AS(parse_graph_model("tree"), std::invalid_argument);
}

TEST_CASE("generators emit connected unit-weight graphs deterministically") {
  for (GraphModel m : {GraphModel::ErdosRenyi, GraphModel::BarabasiAlbert,
                       GraphModel::WattsStrogatz, GraphModel::Geometric}) {
    CAPTURE(graph_model_name(m));
    WeightedGraph g = generate(m, 128, 5);
    CHECK(g.n >= 16);
    CHECK(g.n <= 128);
    CHECK(is_connected(g));
    for (const auto& e : g.edges) CHECK(e.w == 1.0);

    WeightedGraph same = generate(m, 128, 5);
    CHECK(same.n == g.n);
    REQUIRE(same.num_edges() == g.num_edges());
    bool identical = true;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      identical = identical && same.edges[i].u == g.edges[i].u &&
                  same.edges[i].v == g.edges[i].v;
    CHECK(identical);

    WeightedGraph other = generate(m, 128, 6);
    bool differs = other.n != g.n || other.num_edges() != g.num_edges();
    if (!differs)
      for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (other.edges[i].u != g.edges[i].u || other.edges[i].v != g.edges[i].v)
          differs = true;
    CHECK(differs);
  }
  CHECK_THROWS_AS(generate(GraphModel::ErdosRenyi, 15, 0), std::invalid_argument);
}

TEST_CASE("edge-probability family hits its expected density at the pivot size") {
  // At n = 512 the default probability is 0.1, giving 13081.6 expected edges.
  WeightedGraph g = generate(GraphModel::ErdosRenyi, 512, 123);
  CHECK(g.n == 512);  // far above the connectivity threshold
  CHECK(g.num_edges() > 12500);
  CHECK(g.num_edges() < 13700);

  GeneratorParams dense;
  dense.er_p = 0.9;
  WeightedGraph h = generate(GraphModel::ErdosRenyi, 32, 7, dense);
  CHECK(h.n == 32);
  CHECK(h.num_edges() > 400);
  CHECK(h.num_edges() <= 496);
}

TEST_CASE("preferential-attachment family adds exactly m edges per node") {
  WeightedGraph g = generate(GraphModel::BarabasiAlbert, 100, 3);
  CHECK(g.n == 100);
  CHECK(g.num_edges() == (100 - 4) * 4);
  CHECK(is_connected(g));
  GeneratorParams p;
  p.ba_m = 2;
  WeightedGraph h = generate(GraphModel::BarabasiAlbert, 50, 3, p);
  CHECK(h.num_edges() == (50 - 2) * 2);
}

TEST_CASE("ring-rewiring family keeps the lattice at zero rewiring") {
  GeneratorParams frozen;
  frozen.ws_p = 0.0;
  WeightedGraph g = generate(GraphModel::WattsStrogatz, 60, 9, frozen);
  REQUIRE(g.n == 60);
  CHECK(g.num_edges() == 60 * 5);
  std::vector<int> deg = g.unweighted_degrees();
  for (int v = 0; v < g.n; ++v) CHECK(deg[v] == 10);
  // Every ring offset 1..5 must be present.
  for (int v = 0; v < g.n; ++v) {
    std::set<int> nb;
    for (const auto& a : g.adjacency[v]) nb.insert(a.v);
    for (int j = 1; j <= 5; ++j) {
      CHECK(nb.count((v + j) % 60) == 1);
      CHECK(nb.count((v - j + 60) % 60) == 1);
    }
  }

  // Rewiring preserves the edge count and never loses the source's stubs.
  WeightedGraph r = generate(GraphModel::WattsStrogatz, 200, 11);
  CHECK(r.n == 200);
  CHECK(r.num_edges() == 200 * 5);
  std::vector<int> rdeg = r.unweighted_degrees();
  CHECK(*std::min_element(rdeg.begin(), rdeg.end()) >= 5);
}

TEST_CASE("proximity family connects all near pairs and only near pairs") {
  GeneratorParams p;
  p.geo_r = 0.8;  // large radius keeps the graph connected at n = 32
  WeightedGraph g = generate(GraphModel::Geometric, 32, 21, p);
  CHECK(g.n >= 16);
  CHECK(is_connected(g));
  // Density grows with the radius.
  GeneratorParams wide;
  wide.geo_r = 2.0;  // unit square diameter < 2: complete graph
  WeightedGraph c = generate(GraphModel::Geometric, 20, 21, wide);
  CHECK(c.n == 20);
  CHECK(c.num_edges() == 20 * 19 / 2);
}

TEST_CASE("experiment ladder splits 25 sizes into 5/5/15 ascending") {
  ExperimentSplit split = experiment_split(GraphModel::WattsStrogatz, 4);
  REQUIRE(split.train.size() == 5);
  REQUIRE(split.val.size() == 5);
  REQUIRE(split.test.size() == 15);
  for (int i = 0; i < 5; ++i) CHECK(split.train[i].n == 512 + 100 * i);
  for (int i = 0; i < 5; ++i) CHECK(split.val[i].n == 1012 + 100 * i);
  for (int i = 0; i < 15; ++i) CHECK(split.test[i].n == 1512 + 100 * i);
  for (const auto& g : split.train) CHECK(is_connected(g));

  // Same ladder, same seed: first graphs coincide.
  ExperimentSplit again = experiment_split(GraphModel::WattsStrogatz, 4);
  CHECK(again.train[0].num_edges() == split.train[0].num_edges());
}

TEST_CASE("random-walk subgraphs are induced, connected, and seeded") {
  Rng rng(121);
  WeightedGraph g = testing::random_connected_graph(40, 0.15, rng);
  std::vector<WalkSubgraph> subs = random_walk_bootstrap(g, 6, 12, 31);
  REQUIRE(subs.size() == 6);
  for (const WalkSubgraph& s : subs) {
    REQUIRE(!s.vertices.empty());
    CHECK(int(s.vertices.size()) <= 13);  // at most walk_len + 1 distinct
    for (std::size_t i = 1; i < s.vertices.size(); ++i)
      CHECK(s.vertices[i] > s.vertices[i - 1]);
    for (int v : s.vertices) {
      CHECK(v >= 0);
      CHECK(v < g.n);
    }
    CHECK(s.graph.n == int(s.vertices.size()));
    CHECK(is_connected(s.graph));
    // Induced: every host edge between chosen vertices appears with its weight.
    for (const auto& e : s.graph.edges) {
      const int hu = s.vertices[e.u];
      const int hv = s.vertices[e.v];
      bool found = false;
      for (const auto& a : g.adjacency[hu])
        if (a.v == hv) {
          found = true;
          CHECK(g.edges[a.edge].w == e.w);
        }
      CHECK(found);
    }
    int induced_count = 0;
    std::set<int> chosen(s.vertices.begin(), s.vertices.end());
    for (const auto& e : g.edges)
      if (chosen.count(e.u) && chosen.count(e.v)) ++induced_count;
    CHECK(s.graph.num_edges() == induced_count);
  }

  std::vector<WalkSubgraph> rep = random_walk_bootstrap(g, 6, 12, 31);
  for (int i = 0; i < 6; ++i) CHECK(rep[i].vertices == subs[i].vertices);
  std::vector<WalkSubgraph> alt = random_walk_bootstrap(g, 6, 12, 32);
  bool all_same = true;
  for (int i = 0; i < 6; ++i)
    all_same = all_same && alt[i].vertices == subs[i].vertices;
  CHECK_FALSE(all_same);
}

TEST_CASE("walk transition weighting responds to the weighted flag") {
  // A heavy edge dominates weighted walks started anywhere on a small path:
  // vertex 1 pulls towards 2 with weight 1000 but away with weight 1.
  WeightedGraph g = WeightedGraph::build(
      4, {{0, 1, 1.0}, {1, 2, 1000.0}, {2, 3, 1.0}});
  int weighted_hits = 0, uniform_hits = 0;
  for (int s = 0; s < 40; ++s) {
    std::vector<WalkSubgraph> w = random_walk_bootstrap(g, 1, 2, 100 + s, true);
    std::vector<WalkSubgraph> u = random_walk_bootstrap(g, 1, 2, 100 + s, false);
    auto hits = [](const WalkSubgraph& s_, int a, int b) {
      bool ha = false, hb = false;
      for (int v : s_.vertices) {
        ha = ha || v == a;
        hb = hb || v == b;
      }
      return ha && hb;
    };
    weighted_hits += hits(w[0], 1, 2);
    uniform_hits += hits(u[0], 1, 2);
  }
  // The heavy edge (1,2) shows up far more often under weighted transitions.
  CHECK(weighted_hits > uniform_hits);
}

TEST_SUITE_END();
