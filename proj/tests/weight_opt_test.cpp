#include <doctest.h>

#include <stdexcept>

#include "coarsen/operators.hpp"
#include "coarsen/spectral.hpp"
#include "coarsen/weight_opt.hpp"
#include "support.hpp"

using namespace coarsen;

TEST_SUITE_BEGIN("weight_opt");

TEST_CASE("half-vectorization indexes pairs row by row") {
  CHECK(halfvec_index(4, 0, 1) == 0);
  CHECK(halfvec_index(4, 0, 2) == 1);
  CHECK(halfvec_index(4, 0, 3) == 2);
  CHECK(halfvec_index(4, 1, 2) == 3);
  CHECK(halfvec_index(4, 1, 3) == 4);
  CHECK(halfvec_index(4, 2, 3) == 5);
  CHECK_THROWS_AS(halfvec_index(4, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(halfvec_index(4, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(halfvec_index(4, 0, 4), std::invalid_argument);
  // Last pair lands at the end of the half-vector for several sizes.
  for (int n : {2, 3, 5, 8})
    CHECK(halfvec_index(n, n - 2, n - 1) == n * (n - 1) / 2 - 1);
}

TEST_CASE("lap_apply builds the zero-row-sum symmetric matrix") {
  HalfVecLaplacianOp op = HalfVecLaplacianOp::complete(4);
  Vec w(6);
  w << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;  // (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
  Mat L = lap_apply(op, w);
  Mat expect(4, 4);
  expect << 6, -1, -2, -3,
           -1, 10, -4, -5,
           -2, -4, 12, -6,
           -3, -5, -6, 14;
  CHECK((L - expect).cwiseAbs().maxCoeff() == 0.0);
  CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
  Vec bad(5);
  CHECK_THROWS_AS(lap_apply(op, bad), std::invalid_argument);
}

TEST_CASE("lap_apply on a graph topology matches the graph laplacian") {
  Rng rng(41);
  WeightedGraph g = testing::random_connected_graph(10, 0.3, rng);
  HalfVecLaplacianOp op = HalfVecLaplacianOp::from_graph(g);
  Vec w = Vec::Zero(op.num_pairs());
  for (const auto& e : g.edges) w[halfvec_index(g.n, e.u, e.v)] = e.w;
  Mat L = lap_apply(op, w);
  Mat Lg = testing::dense(laplacian(g, OperatorKind::Combinatorial));
  CHECK((L - Lg).cwiseAbs().maxCoeff() < 1e-14);
  // Mask bookkeeping: exactly the graph's pairs are unmasked.
  int unmasked = 0;
  for (int k = 0; k < op.num_pairs(); ++k) unmasked += !op.masked(k);
  CHECK(unmasked == g.num_edges());
}

TEST_CASE("lap_adjoint satisfies the pairing identity and maps I to 2*ones") {
  Rng rng(42);
  const int n = 6;
  HalfVecLaplacianOp op = HalfVecLaplacianOp::complete(n);
  Vec w(op.num_pairs());
  for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
  Mat Y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) Y(i, j) = Y(j, i) = rng.normal();
  const double lhs = (lap_apply(op, w).array() * Y.array()).sum();
  const double rhs = w.dot(lap_adjoint(op, Y));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  Vec adj_id = lap_adjoint(op, Mat::Identity(n, n));
  CHECK((adj_id.array() - 2.0).abs().maxCoeff() == 0.0);
}

TEST_CASE("masking zeroes non-edge coordinates but keeps the diagonal") {
  WeightedGraph path = testing::path_graph(4);  // pairs (0,1),(1,2),(2,3) only
  HalfVecLaplacianOp op = HalfVecLaplacianOp::from_graph(path);
  Vec w = Vec::Ones(op.num_pairs());
  Vec masked = mask_halfvec(op, w);
  CHECK(masked[halfvec_index(4, 0, 1)] == 1.0);
  CHECK(masked[halfvec_index(4, 0, 2)] == 0.0);
  CHECK(masked[halfvec_index(4, 0, 3)] == 0.0);
  CHECK(masked[halfvec_index(4, 1, 3)] == 0.0);

  Mat Y = Mat::Ones(4, 4) * 3.0;
  Mat my = mask_to_topology(op, Y);
  for (int i = 0; i < 4; ++i) CHECK(my(i, i) == 3.0);
  CHECK(my(0, 1) == 3.0);
  CHECK(my(0, 2) == 0.0);
  CHECK(my(1, 3) == 0.0);
  CHECK(my(2, 3) == 3.0);
}

TEST_CASE("spectral alignment recovers an attainable 3-vertex spectrum") {
  WeightedGraph g = testing::complete_graph(3);
  Vec target(3);
  target << 0.0, 1.0, 3.0;
  MMResult res = mm_optimize(g, target, 1e-14, 50000);
  REQUIRE(res.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12);
  CHECK(res.objective_trace.back() < 1e-10);
  // The realized spectrum matches the target even though several weight
  // vectors do (the target only pins symmetric functions of the weights).
  Mat L = lap_apply(HalfVecLaplacianOp::complete(3), res.weights);
  Eigen::SelfAdjointEigenSolver<Mat> es(L);
  CHECK(es.eigenvalues()[0] == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
  CHECK(es.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(es.eigenvalues()[2] == doctest::Approx(3.0).epsilon(1e-5));
  CHECK((res.weights.array() >= 0.0).all());
}

TEST_CASE("spectral alignment respects the topology mask") {
  // Star topology: target spectrum of a star with spoke weights (1, 2, 3).
  WeightedGraph target_graph = WeightedGraph::build(
      4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}});
  Spectrum ts = eigen_smallest_k(
      laplacian(target_graph, OperatorKind::Combinatorial), 4);
  Vec target = ts.eigenvalues;
  target[0] = 0.0;

  WeightedGraph start = testing::star_graph(3);  // same topology, unit spokes
  MMResult res = mm_optimize(start, target, 1e-12, 20000);
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12);
  CHECK(res.objective_trace.back() < res.objective_trace.front());
  // Non-edge pairs stay at exactly zero and never re-enter the graph.
  CHECK(res.weights[halfvec_index(4, 1, 2)] == 0.0);
  CHECK(res.weights[halfvec_index(4, 1, 3)] == 0.0);
  CHECK(res.weights[halfvec_index(4, 2, 3)] == 0.0);
  for (const auto& e : res.graph.edges) CHECK(e.u == 0);
  CHECK((res.graph.vertex_weights - start.vertex_weights).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("spectral alignment stays monotone on a generic problem") {
  Rng rng(43);
  WeightedGraph g = testing::random_connected_graph(12, 0.3, rng);
  // Target: spectrum of a re-randomized weighting of the same topology.
  Vec w2(g.num_edges());
  for (int i = 0; i < w2.size(); ++i) w2[i] = 0.5 + rng.uniform();
  Spectrum ts = eigen_smallest_k(
      laplacian(reweighted(g, w2), OperatorKind::Combinatorial), g.n);
  Vec target = ts.eigenvalues;
  target[0] = 0.0;
  MMResult res = mm_optimize(g, target, 1e-9, 2000);
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-10);
  CHECK(res.objective_trace.back() < res.objective_trace.front());
  CHECK(res.iterations == int(res.objective_trace.size()) - 1);
}

TEST_CASE("spectral alignment validates its inputs") {
  WeightedGraph g = testing::complete_graph(3);
  Vec short_target(2);
  short_target << 0.0, 1.0;
  CHECK_THROWS_AS(mm_optimize(g, short_target), std::invalid_argument);
  Vec nonzero_first(3);
  nonzero_first << 0.5, 1.0, 2.0;
  CHECK_THROWS_AS(mm_optimize(g, nonzero_first), std::invalid_argument);
  Vec descending(3);
  descending << 0.0, 2.0, 1.0;
  CHECK_THROWS_AS(mm_optimize(g, descending), std::invalid_argument);
  WeightedGraph tiny = WeightedGraph::build(1, {});
  Vec one(1);
  one << 0.0;
  CHECK_THROWS_AS(mm_optimize(tiny, one), std::invalid_argument);
}

TEST_CASE("tree targets with too few distinct values are flagged as hopeless") {
  WeightedGraph p4 = testing::path_graph(4);  // diameter 3
  Vec lam(4);
  lam << 0.0, 1.0, 1.0, 2.0;  // 3 distinct <= diameter
  CHECK(tree_feasibility_check(p4, lam) == TreeFeasibility::ProvablyInfeasible);
  lam << 0.0, 1.0, 2.0, 3.0;  // 4 distinct > diameter
  CHECK(tree_feasibility_check(p4, lam) == TreeFeasibility::FeasibleUnknown);

  WeightedGraph s4 = testing::star_graph(4);  // diameter 2
  lam << 0.0, 1.0, 1.0, 1.0;  // 2 distinct
  CHECK(tree_feasibility_check(s4, lam) == TreeFeasibility::ProvablyInfeasible);
  lam << 0.0, 1.0, 1.0, 3.0;  // 3 distinct
  CHECK(tree_feasibility_check(s4, lam) == TreeFeasibility::FeasibleUnknown);

  // Non-trees are never flagged, even for degenerate targets.
  WeightedGraph c4 = testing::cycle_graph(4);
  lam << 0.0, 0.0, 0.0, 0.0;
  CHECK(tree_feasibility_check(c4, lam) == TreeFeasibility::FeasibleUnknown);
  WeightedGraph forest = WeightedGraph::build(
      4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});  // n-1 edges, disconnected
  CHECK(tree_feasibility_check(forest, lam) == TreeFeasibility::FeasibleUnknown);
}

TEST_SUITE_END();
