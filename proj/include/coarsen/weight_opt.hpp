#pragma once

#include <vector>

#include "coarsen/graph.hpp"

namespace coarsen {

/// Linear operator taking a half-vectorized weight vector w (one entry per
/// unordered vertex pair, see halfvec_index) to the Laplacian-structured
/// symmetric matrix with off-diagonal (a,b) = -w_ab and zero row sums.
/// edge_mask marks the pairs that are actual edges of a topology; the
/// optimizer keeps every non-edge coordinate at exactly zero.
struct HalfVecLaplacianOp {
  int n = 0;
  std::vector<char> edge_mask;  // size n(n-1)/2; empty means all pairs

  static HalfVecLaplacianOp complete(int n);
  static HalfVecLaplacianOp from_graph(const WeightedGraph& g);

  int num_pairs() const { return n * (n - 1) / 2; }
  bool masked(int pair) const {
    return !edge_mask.empty() && !edge_mask[pair];
  }
};

/// Index of pair (a, b), 0 <= a < b < n, in the ordering
/// (0,1), (0,2), .., (0,n-1), (1,2), ..
int halfvec_index(int n, int a, int b);

/// The structured matrix itself: symmetric, off-diagonal -w, diagonal = row
/// sums of w.
Mat lap_apply(const HalfVecLaplacianOp& op, const Vec& w);

/// Adjoint under the Frobenius pairing: <lap_apply(w), Y> = <w, lap_adjoint(Y)>
/// for every w and symmetric Y; entry (a,b) is Y_aa + Y_bb - Y_ab - Y_ba.
Vec lap_adjoint(const HalfVecLaplacianOp& op, const Mat& Y);

/// Zero out the non-edge coordinates of w.
Vec mask_halfvec(const HalfVecLaplacianOp& op, const Vec& w);

/// Zero out matrix entries at non-edge off-diagonal positions; diagonal
/// entries are kept (they carry the row sums of any masked w, so masking
/// commutes with lap_apply/lap_adjoint on the edge subspace).
Mat mask_to_topology(const HalfVecLaplacianOp& op, const Mat& Y);

struct MMResult {
  /// The coarse graph rebuilt with the optimized weights; pairs driven to
  /// exactly zero are dropped. Vertex weights are preserved.
  WeightedGraph graph;
  Vec weights;  // full half-vectorized weights (non-edges exactly 0)
  /// Frobenius objective ||lap_apply(w) - U diag(lambda) U^T||_F^2 at the
  /// start and after each full (w, U) iteration; non-increasing.
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
};

/// Majorize-minimize spectral alignment of the edge weights of g_coarse to
/// the ascending target eigenvalues (target_lambda[0] must be ~0 and the
/// length must equal the vertex count). Alternates a projected single
/// majorization step on w (step 1/(2n), clip at 0) with the exact U update
/// (eigenvectors of the current matrix, ascending); stops when the relative
/// objective decrease falls below tol.
MMResult mm_optimize(const WeightedGraph& g_coarse, const Vec& target_lambda,
                     double tol = 1e-9, int max_iter = 5000);

/// A tree on n vertices can only realize spectra with more distinct
/// eigenvalues than its diameter; spectra that violate this are hopeless
/// before any optimization.
enum class TreeFeasibility { FeasibleUnknown, ProvablyInfeasible };

TreeFeasibility tree_feasibility_check(const WeightedGraph& g_coarse,
                                       const Vec& target_lambda);

}  // namespace coarsen
