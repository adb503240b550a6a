#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarsen/graph.hpp"

namespace coarsen {

/// Spectral discrepancy measures between a graph and a reweighted coarse
/// version of it. CLI names in parentheses.
///  - QuadraticCombinatorial (quad): mean |f^T L f - (Pf)^T Lc (Pf)| over
///    the first k eigenvectors f of L.
///  - QuadraticNormalized (quad_norm): same with the normalized Laplacian
///    and its degree-corrected projection.
///  - Rayleigh (rayleigh): mean Rayleigh-quotient discrepancy under the
///    doubly-weighted coarse operator.
///  - Conductance (conductance): mean |phi(S) - phi(pi(S))| over k random
///    vertex subsets S.
///  - Eigenerror (eigenerror): mean relative eigenvalue deviation
///    (evaluation only; no gradient).
enum class LossKind {
  QuadraticCombinatorial,
  QuadraticNormalized,
  Rayleigh,
  Conductance,
  Eigenerror,
};

std::string loss_name(LossKind k);
LossKind parse_loss(const std::string& name);

struct LossSpec {
  LossKind kind = LossKind::QuadraticCombinatorial;
  int k = 40;              // test vector / subset / eigenvalue count
  std::uint64_t seed = 0;  // subset sampling stream
};

/// Columns the loss is evaluated on: eigenvectors (unit columns, ascending
/// eigenvalues, the zero-eigenvalue column first) or 0/1 subset indicators.
struct TestVectors {
  enum class Provenance {
    EigenvectorsCombinatorial,
    EigenvectorsNormalized,
    SampledSubsets,
  };
  Provenance provenance = Provenance::EigenvectorsCombinatorial;
  Mat vectors;  // n x k
};

TestVectors make_test_vectors(const WeightedGraph& g, const LossSpec& spec);

/// Precomputed form of a loss for one (graph, coarsening, spec) triple:
/// everything independent of the coarse edge weights is folded in once, so
/// value() and gradient() cost O(k * coarse edges). Weights are aligned
/// with result.coarse.edges.
class LossPlan {
 public:
  static LossPlan build(const WeightedGraph& g, const CoarseningResult& result,
                        const LossSpec& spec, const TestVectors& tv);

  double value(const Vec& w) const;

  /// d value / d w (one-sided at the |.| and min kinks). Throws
  /// std::logic_error for the Eigenerror kind.
  Vec gradient(const Vec& w) const;

  int num_weights() const { return num_weights_; }
  bool differentiable() const { return kind_ != LossKind::Eigenerror; }

 private:
  LossKind kind_ = LossKind::QuadraticCombinatorial;
  int k_ = 0;
  int num_weights_ = 0;

  // quadratic / rayleigh: per-vector target, per-(vector, edge) coefficient
  Vec targets_;
  Mat coef_;  // k x m
  Vec denom_;  // rayleigh only: ||proj f||^2 per vector (<=0 marks a skip)

  // conductance: per-(subset, edge) crossing indicator and endpoint counts
  Mat cross_, cnt_in_, cnt_out_;

  // eigenerror: evaluated from scratch against these copies
  WeightedGraph eig_g_;
  CoarseningResult eig_result_;
};

/// One-shot wrappers around LossPlan.
double evaluate_loss(const WeightedGraph& g, const CoarseningResult& result,
                     const Vec& coarse_weights, const LossSpec& spec,
                     const TestVectors& tv);
Vec loss_gradient_wrt_weights(const WeightedGraph& g,
                              const CoarseningResult& result,
                              const Vec& coarse_weights, const LossSpec& spec,
                              const TestVectors& tv);

}  // namespace coarsen
