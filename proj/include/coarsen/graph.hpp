#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

namespace coarsen {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

/// Undirected graph with strictly positive edge weights and optional
/// positive vertex weights (default: all ones).
///
/// Representation invariants, enforced by build():
///  - vertex ids are 0-based and < n
///  - each edge is stored once with u < v, no self-loops, no duplicates
///  - edge weights are finite and > 0, vertex weights finite and > 0
/// The adjacency list mirrors `edges` exactly (entry carries the edge index).
struct WeightedGraph {
  struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
  };
  struct Neighbor {
    int v = 0;       // neighbor vertex
    double w = 1.0;  // edge weight
    int edge = 0;    // index into edges
  };

  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<Neighbor>> adjacency;
  Vec vertex_weights;  // size n, strictly positive

  /// Validating factory. Edges may arrive in either orientation; they are
  /// normalized to u < v and sorted lexicographically. Empty vertex_weights
  /// means all ones. Throws std::invalid_argument on any violation.
  static WeightedGraph build(int n, std::vector<Edge> edges,
                             Vec vertex_weights = Vec());

  int num_edges() const { return static_cast<int>(edges.size()); }

  /// Weighted degree d_i = sum of incident edge weights.
  Vec weighted_degrees() const;

  /// Unweighted degree (neighbor count) per vertex.
  std::vector<int> unweighted_degrees() const;

  double total_edge_weight() const;
};

bool is_connected(const WeightedGraph& g);

/// Surjective map from n vertices onto n_coarse clusters.
/// cluster_sizes[r] = |{i : assign[i] == r}|, always >= 1.
struct Partition {
  int n = 0;
  int n_coarse = 0;
  std::vector<int> assign;         // size n, values in [0, n_coarse)
  std::vector<int> cluster_sizes;  // size n_coarse

  /// Validating factory: checks range and surjectivity (every cluster id
  /// in [0, n_coarse) is hit), derives cluster_sizes.
  static Partition from_assignment(int n_coarse, std::vector<int> assign);

  /// Vertices of each cluster, ascending within a cluster.
  std::vector<std::vector<int>> clusters() const;
};

Partition identity_partition(int n);

/// True iff every cluster induces a connected subgraph of g.
bool clusters_connected(const WeightedGraph& g, const Partition& p);

/// Coarse graph induced by a partition: coarse edge (r,s) carries the total
/// weight of original edges crossing between clusters r and s; coarse vertex
/// weights are the cluster sizes.
WeightedGraph induce_coarse_graph(const WeightedGraph& g, const Partition& p);

/// Matrix forms of a partition.
/// P (n_coarse x n) averages within clusters: P[r,i] = 1/gamma_r if
/// assign[i] == r. P_plus (n x n_coarse) is its membership-indicator
/// pseudoinverse: P_plus[i,r] = 1 iff assign[i] == r, so P * P_plus = I and
/// P_plus * P is the block-averaging map. gamma holds the cluster sizes.
struct CoarseningMatrices {
  SpMat P;
  SpMat P_plus;
  Vec gamma;
};

CoarseningMatrices coarsening_matrices(const Partition& p);

/// P * x without materializing P: per-cluster mean of x.
Vec project_mean(const Partition& p, const Vec& x);

/// P_plus * xc without materializing P_plus: copy each cluster value to its
/// members.
Vec lift_copy(const Partition& p, const Vec& xc);

/// Copy of g with edge weights replaced positionally (w aligned with
/// g.edges); topology and vertex weights are kept.
WeightedGraph reweighted(const WeightedGraph& g, const Vec& w);

/// Output of a coarsening run. `ratio` is the achieved reduction
/// 1 - n_coarse/n; `clusters_connected` records whether every cluster of
/// `partition` induces a connected subgraph of `original`.
struct CoarseningResult {
  WeightedGraph original;
  Partition partition;
  WeightedGraph coarse;
  std::string algorithm;
  double ratio = 0.0;
  bool clusters_connected = true;
};

}  // namespace coarsen
