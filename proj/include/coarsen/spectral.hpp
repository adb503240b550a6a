#pragma once

#include "coarsen/graph.hpp"

namespace coarsen {

/// The k algebraically smallest eigenpairs of a symmetric matrix,
/// eigenvalues ascending, eigenvectors orthonormal columns.
struct Spectrum {
  Vec eigenvalues;   // size k
  Mat eigenvectors;  // n x k
};

struct EigOptions {
  /// Dimensions up to this use a dense full decomposition; larger ones use
  /// thick-restart Lanczos with full reorthogonalization.
  int dense_threshold = 2048;
  /// Force the Lanczos path regardless of dimension (used to cross-check
  /// the two paths against each other).
  bool force_lanczos = false;
  /// Relative residual target ||A v - lambda v|| <= tol * ||A||.
  double tol = 1e-10;
  int max_restarts = 400;
};

Spectrum eigen_smallest_k(const SpMat& A, int k, const EigOptions& opts = {});

/// Mean relative deviation between the spectra of the original
/// combinatorial Laplacian and the coarse doubly-weighted Laplacian over
/// eigenvalue indices 2..k+1 (the zero eigenvalue of a connected graph is
/// skipped; indices past the coarse dimension are dropped).
double eigenerror(const WeightedGraph& g, const CoarseningResult& result,
                  int k);

/// Same, with the coarse edge weights replaced by `coarse_w` (aligned with
/// result.coarse.edges).
double eigenerror_with_weights(const WeightedGraph& g,
                               const CoarseningResult& result,
                               const Vec& coarse_w, int k);

}  // namespace coarsen
