#pragma once

#include <cstdint>
#include <string>

#include "coarsen/graph.hpp"

namespace coarsen {

/// Coarsening strategies. CLI names in parentheses.
///  - Baseline (bl): random landmarks; vertices join the nearest landmark by
///    hop distance, ties broken uniformly at random.
///  - HeavyEdge (heavy_edge): greedy matching by w_ij / max(d_i, d_j).
///  - AlgebraicDistance (alg_dist): damped-Jacobi-smoothed random test
///    vectors; matching contracts the smallest-distance edges first.
///  - Affinity (affinity): Gauss-Seidel-smoothed test vectors; matching
///    contracts the highest-affinity edges first.
///  - LocalVarEdge / LocalVarNeigh (lv_edge / lv_neigh): greedy contraction
///    of edges / closed neighborhoods by the spectral-subspace variation
///    cost of each candidate set.
enum class CoarseningAlgorithm {
  Baseline,
  HeavyEdge,
  AlgebraicDistance,
  Affinity,
  LocalVarEdge,
  LocalVarNeigh,
};

std::string algorithm_name(CoarseningAlgorithm a);
CoarseningAlgorithm parse_algorithm(const std::string& name);

struct CoarseningConfig {
  CoarseningAlgorithm algorithm = CoarseningAlgorithm::HeavyEdge;
  /// Requested reduction 1 - n_coarse/n, in [0, 1). The achieved coarse
  /// size lands within one vertex of round((1 - ratio) * n).
  double ratio = 0.5;
  std::uint64_t seed = 0;
  /// Test-vector count for AlgebraicDistance / Affinity.
  int q_vectors = 10;
  /// Damped-Jacobi sweep count for AlgebraicDistance.
  int relaxation_sweeps = 20;
  double jacobi_omega = 0.5;
  /// Cap on the spectral subspace dimension for the local variation cost
  /// (the effective dimension is min(cap, target size)).
  int lv_max_subspace = 40;
};

/// round((1 - ratio) * n), clamped to at least 2; throws if unreachable.
int target_coarse_size(int n, double ratio);

/// Runs the configured algorithm on a connected graph until the coarse size
/// reaches the target. Matching-based algorithms contract highest-priority
/// disjoint pairs level by level, taking only as many pairs per level as
/// still fit the target, so the target is hit exactly; set-based local
/// variation may land one below. Fully deterministic given cfg.seed.
CoarseningResult coarsen(const WeightedGraph& g, const CoarseningConfig& cfg);

}  // namespace coarsen
