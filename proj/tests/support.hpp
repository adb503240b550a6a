#pragma once

#include <functional>
#include <vector>

#include <coarsen/graph.hpp>
#include <coarsen/rng.hpp>

namespace coarsen::testing {

WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph cycle_graph(int n, double w = 1.0);
WeightedGraph star_graph(int leaves, double w = 1.0);
WeightedGraph complete_graph(int n, double w = 1.0);

// Triangle {0,1,2} joined to path 3-4-5 by edges (2,3) and (0,5): seven unit
// edges, splitting naturally into the two halves.
WeightedGraph two_cluster_toy();
Partition two_cluster_partition();

// Random spanning tree plus independent extra edges; weights drawn in (0,2]
// unless unit_weights is set.
WeightedGraph random_connected_graph(int n, double extra_edge_prob, Rng& rng,
                                     bool unit_weights = false);

// Random partition into n_coarse connected clusters, built by contracting
// randomly chosen crossing edges.
Partition random_connected_partition(const WeightedGraph& g, int n_coarse,
                                     Rng& rng);

Mat dense(const SpMat& a);

// max_i |a_i - b_i| / max(1, |b_i|)
double max_rel_diff(const Vec& a, const Vec& b);

// Central finite difference of f at x, step h_i = h_scale * max(1, |x_i|).
Vec central_difference(const std::function<double(const Vec&)>& f, const Vec& x,
                       double h_scale);

// True iff |a - f| <= rel * max(|a|, |f|) + abs for every coordinate.
bool gradients_close(const Vec& analytic, const Vec& numeric, double rel,
                     double abs);

}  // namespace coarsen::testing
