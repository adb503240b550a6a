#include "coarsen/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "coarsen/operators.hpp"
#include "coarsen/rng.hpp"

namespace coarsen {

namespace {

/// Gershgorin bound on the spectral norm of a symmetric sparse matrix.
double operator_norm_bound(const SpMat& A) {
  Vec rowsum = Vec::Zero(A.rows());
  for (int c = 0; c < A.outerSize(); ++c)
    for (SpMat::InnerIterator it(A, c); it; ++it)
      rowsum[it.row()] += std::abs(it.value());
  return rowsum.size() > 0 ? rowsum.maxCoeff() : 0.0;
}

Spectrum dense_smallest_k(const SpMat& A, int k) {
  Eigen::SelfAdjointEigenSolver<Mat> es{Mat(A)};
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigen_smallest_k: dense decomposition failed");
  Spectrum s;
  s.eigenvalues = es.eigenvalues().head(k);
  s.eigenvectors = es.eigenvectors().leftCols(k);
  return s;
}

/// Two classical Gram-Schmidt passes of w against the first ncols columns
/// of V (full reorthogonalization).
void reorthogonalize(const Mat& V, int ncols, Vec& w) {
  if (ncols == 0) return;
  const auto B = V.leftCols(ncols);
  for (int pass = 0; pass < 2; ++pass)
    w.noalias() -= B * (B.transpose() * w);
}

/// Thick-restart Lanczos for the k smallest eigenpairs of symmetric A.
/// The basis is kept orthonormal by full reorthogonalization; each restart
/// keeps the lowest Ritz pairs plus the continuation vector, giving the
/// standard arrowhead-plus-tridiagonal projected matrix.
Spectrum lanczos_smallest_k(const SpMat& A, int k, const EigOptions& opts) {
  const int n = static_cast<int>(A.rows());
  const double scale = std::max(operator_norm_bound(A), 1e-300);
  const int m = std::min(n, std::max(2 * k + 10, 40));

  Mat V(n, m + 1);
  Vec alpha = Vec::Zero(m);
  Vec beta = Vec::Zero(m);  // beta[j] couples columns j and j+1
  Vec theta;                // Ritz values kept across a restart
  Vec border;               // their coupling to the continuation vector
  int l = 0;                // number of kept columns

  Rng rng(0x1a5ce5u);
  auto random_unit_orth = [&](int ncols) -> Vec {
    for (int attempt = 0; attempt < 32; ++attempt) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = rng.normal();
      reorthogonalize(V, ncols, v);
      const double nr = v.norm();
      if (nr > 1e-8) return v / nr;
    }
    throw std::runtime_error("eigen_smallest_k: basis extension failed");
  };

  V.col(0) = random_unit_orth(0);
  double best_residual = std::numeric_limits<double>::infinity();

  for (int cycle = 0; cycle < opts.max_restarts; ++cycle) {
    for (int j = l; j < m; ++j) {
      Vec w = A * V.col(j);
      if (j == l && l > 0)
        for (int i = 0; i < l; ++i) w -= border[i] * V.col(i);
      if (j > l) w -= beta[j - 1] * V.col(j - 1);
      alpha[j] = V.col(j).dot(w);
      w -= alpha[j] * V.col(j);
      reorthogonalize(V, j + 1, w);
      beta[j] = w.norm();
      if (beta[j] > 1e-13 * scale) {
        V.col(j + 1) = w / beta[j];
      } else if (j + 1 < n) {
        // invariant subspace hit: continue from a fresh direction
        beta[j] = 0.0;
        V.col(j + 1) = random_unit_orth(j + 1);
      } else {
        beta[j] = 0.0;
        V.col(j + 1).setZero();
      }
    }

    Mat T = Mat::Zero(m, m);
    for (int i = 0; i < l; ++i) {
      T(i, i) = theta[i];
      T(i, l) = T(l, i) = border[i];
    }
    for (int j = l; j < m; ++j) {
      T(j, j) = alpha[j];
      if (j + 1 < m) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(T);
    const Vec th = es.eigenvalues();
    const Mat Y = es.eigenvectors();
    const double beta_last = beta[m - 1];

    double worst_estimate = 0.0;
    for (int i = 0; i < k; ++i)
      worst_estimate =
          std::max(worst_estimate, std::abs(beta_last * Y(m - 1, i)));
    best_residual = std::min(best_residual, worst_estimate);

    if (worst_estimate <= opts.tol * scale || cycle + 1 == opts.max_restarts) {
      Spectrum s;
      s.eigenvalues = th.head(k);
      s.eigenvectors.noalias() = V.leftCols(m) * Y.leftCols(k);
      double worst_exact = 0.0;
      for (int i = 0; i < k; ++i)
        worst_exact = std::max(
            worst_exact, (A * s.eigenvectors.col(i) -
                          s.eigenvalues[i] * s.eigenvectors.col(i))
                             .norm());
      if (worst_exact <= 10.0 * opts.tol * scale) return s;
      best_residual = std::min(best_residual, worst_exact);
      if (cycle + 1 == opts.max_restarts) break;
    }

    const int keep = std::min(k + 10, m - 2);
    Mat kept;
    kept.noalias() = V.leftCols(m) * Y.leftCols(keep);
    Vec s_new(keep);
    for (int i = 0; i < keep; ++i) s_new[i] = beta_last * Y(m - 1, i);
    theta = th.head(keep);
    border = s_new;
    V.leftCols(keep) = kept;
    V.col(keep) = V.col(m);
    l = keep;
    if (V.col(keep).norm() < 0.5)  // continuation slot was zeroed
      V.col(keep) = random_unit_orth(keep);
  }
  throw std::runtime_error(
      "eigen_smallest_k: Lanczos did not converge; best residual " +
      std::to_string(best_residual));
}

}  // namespace

Spectrum eigen_smallest_k(const SpMat& A, int k, const EigOptions& opts) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("eigen_smallest_k: matrix not square");
  const int n = static_cast<int>(A.rows());
  if (k < 1 || k > n)
    throw std::invalid_argument("eigen_smallest_k: k out of range");
  if (n <= opts.dense_threshold && !opts.force_lanczos)
    return dense_smallest_k(A, k);
  return lanczos_smallest_k(A, k, opts);
}

double eigenerror(const WeightedGraph& g, const CoarseningResult& result,
                  int k) {
  Vec w(result.coarse.num_edges());
  for (int e = 0; e < result.coarse.num_edges(); ++e)
    w[e] = result.coarse.edges[e].w;
  return eigenerror_with_weights(g, result, w, k);
}

double eigenerror_with_weights(const WeightedGraph& g,
                               const CoarseningResult& result,
                               const Vec& coarse_w, int k) {
  const int nc = result.partition.n_coarse;
  if (k < 1 || k > nc)
    throw std::invalid_argument("eigenerror: k must be in [1, n_coarse]");
  const int m = std::min(k + 1, nc);  // slot 0 is the zero eigenvalue

  const Spectrum fine =
      eigen_smallest_k(laplacian(g, OperatorKind::Combinatorial), m);
  const WeightedGraph coarse = reweighted(result.coarse, coarse_w);
  const Spectrum cs =
      eigen_smallest_k(laplacian(coarse, OperatorKind::DoublyWeighted), m);

  double acc = 0.0;
  for (int i = 1; i < m; ++i) {
    const double lam = fine.eigenvalues[i];
    if (lam <= 0.0)
      throw std::runtime_error(
          "eigenerror: reference eigenvalue <= 0 (disconnected graph?)");
    acc += std::abs(cs.eigenvalues[i] - lam) / lam;
  }
  return acc / static_cast<double>(m - 1);
}

}  // namespace coarsen
