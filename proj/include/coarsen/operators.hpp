#pragma once

#include <functional>
#include <vector>

#include "coarsen/graph.hpp"

namespace coarsen {

/// Laplacian variants of a weighted graph with degrees d and weights W:
///  - Combinatorial:  L = D - W
///  - Normalized:     I - D^{-1/2} W D^{-1/2}   (requires no isolated vertex)
///  - DoublyWeighted: G^{-1/2} (D - W) G^{-1/2} with G = diag(vertex weights)
enum class OperatorKind { Combinatorial, Normalized, DoublyWeighted };

SpMat laplacian(const WeightedGraph& g, OperatorKind kind);

/// A dense-vector linear map applied without materializing its matrix.
struct LinearMap {
  int rows = 0;
  int cols = 0;
  std::function<Vec(const Vec&)> apply;

  Vec operator()(const Vec& x) const { return apply(x); }
};

/// Projection (fine -> coarse) and lift (coarse -> fine) pair attached to an
/// operator kind, chosen so that projection o lift = identity on the coarse
/// space and the coarse quadratic form agrees with the fine form on lifted
/// vectors:
///  - Combinatorial:  proj = P,                        lift = P_plus
///  - DoublyWeighted: proj = G^{-1/2} P_plus^T,        lift = P_plus G^{-1/2}
///  - Normalized:     proj = Dc^{1/2} P D^{-1/2},      lift = D^{1/2} P_plus Dc^{-1/2}
/// where D are the fine degrees and Dc the coarse degrees.
struct ProjectionLift {
  LinearMap proj;
  LinearMap lift;
};

ProjectionLift projection_lift(const Partition& p, const WeightedGraph& g,
                               const WeightedGraph& g_coarse,
                               OperatorKind kind);

/// x^T A x for symmetric sparse A.
double quadratic_form(const SpMat& A, const Vec& x);

/// x^T A x / x^T x; throws on the zero vector.
double rayleigh_quotient(const SpMat& A, const Vec& x);

/// Conductance of a vertex subset S: crossing weight divided by
/// min(vol(S), vol(V \ S)), where vol sums weighted degrees. Throws if S is
/// empty or all of V. A subset with no crossing edges has conductance 0.
double conductance(const WeightedGraph& g, const std::vector<int>& subset);

}  // namespace coarsen
