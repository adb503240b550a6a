#include "coarsen/weight_opt.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace coarsen {

int halfvec_index(int n, int a, int b) {
  if (a < 0 || b <= a || b >= n)
    throw std::invalid_argument("halfvec_index: need 0 <= a < b < n");
  return (b - a - 1) + a * (2 * n - a - 1) / 2;
}

HalfVecLaplacianOp HalfVecLaplacianOp::complete(int n) {
  HalfVecLaplacianOp op;
  op.n = n;
  return op;
}

HalfVecLaplacianOp HalfVecLaplacianOp::from_graph(const WeightedGraph& g) {
  HalfVecLaplacianOp op;
  op.n = g.n;
  op.edge_mask.assign(op.num_pairs(), 0);
  for (const auto& e : g.edges) op.edge_mask[halfvec_index(g.n, e.u, e.v)] = 1;
  return op;
}

Mat lap_apply(const HalfVecLaplacianOp& op, const Vec& w) {
  if (w.size() != op.num_pairs())
    throw std::invalid_argument("lap_apply: weight vector size mismatch");
  Mat M = Mat::Zero(op.n, op.n);
  int k = 0;
  for (int a = 0; a < op.n; ++a)
    for (int b = a + 1; b < op.n; ++b, ++k) {
      const double wk = w[k];
      M(a, b) = -wk;
      M(b, a) = -wk;
      M(a, a) += wk;
      M(b, b) += wk;
    }
  return M;
}

Vec lap_adjoint(const HalfVecLaplacianOp& op, const Mat& Y) {
  if (Y.rows() != op.n || Y.cols() != op.n)
    throw std::invalid_argument("lap_adjoint: matrix size mismatch");
  Vec c(op.num_pairs());
  int k = 0;
  for (int a = 0; a < op.n; ++a)
    for (int b = a + 1; b < op.n; ++b, ++k)
      c[k] = Y(a, a) + Y(b, b) - Y(a, b) - Y(b, a);
  return c;
}

Vec mask_halfvec(const HalfVecLaplacianOp& op, const Vec& w) {
  if (w.size() != op.num_pairs())
    throw std::invalid_argument("mask_halfvec: size mismatch");
  if (op.edge_mask.empty()) return w;
  Vec out = w;
  for (int k = 0; k < op.num_pairs(); ++k)
    if (!op.edge_mask[k]) out[k] = 0.0;
  return out;
}

Mat mask_to_topology(const HalfVecLaplacianOp& op, const Mat& Y) {
  if (Y.rows() != op.n || Y.cols() != op.n)
    throw std::invalid_argument("mask_to_topology: size mismatch");
  if (op.edge_mask.empty()) return Y;
  Mat out = Mat::Zero(op.n, op.n);
  out.diagonal() = Y.diagonal();
  for (int a = 0; a < op.n; ++a)
    for (int b = a + 1; b < op.n; ++b)
      if (op.edge_mask[halfvec_index(op.n, a, b)]) {
        out(a, b) = Y(a, b);
        out(b, a) = Y(b, a);
      }
  return out;
}

MMResult mm_optimize(const WeightedGraph& g_coarse, const Vec& target_lambda,
                     double tol, int max_iter) {
  const int n = g_coarse.n;
  if (n < 2) throw std::invalid_argument("mm_optimize: graph too small");
  if (n > 4096)
    throw std::invalid_argument("mm_optimize: dimension above 4096");
  if (target_lambda.size() != n)
    throw std::invalid_argument("mm_optimize: need one target per vertex");
  const double lam_scale = std::max(1.0, target_lambda.cwiseAbs().maxCoeff());
  if (std::abs(target_lambda[0]) > 1e-8 * lam_scale)
    throw std::invalid_argument("mm_optimize: first target must be zero");
  for (int i = 1; i < n; ++i)
    if (target_lambda[i] < target_lambda[i - 1] - 1e-12 * lam_scale)
      throw std::invalid_argument("mm_optimize: targets must be ascending");

  const HalfVecLaplacianOp op = HalfVecLaplacianOp::from_graph(g_coarse);
  Vec w = Vec::Zero(op.num_pairs());
  for (const auto& e : g_coarse.edges)
    w[halfvec_index(n, e.u, e.v)] = e.w;

  const double step = 1.0 / (2.0 * n);  // 1 / ||lap_apply||^2

  Mat M = lap_apply(op, w);
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  Mat U = es.eigenvectors();  // ascending, pairs off against ascending targets

  auto objective = [&](const Mat& lw, const Mat& A) {
    return (lw - A).squaredNorm();
  };
  auto model_matrix = [&](const Mat& Uc) {
    Mat A = Uc * target_lambda.asDiagonal() * Uc.transpose();
    return Mat((A + A.transpose()) / 2.0);
  };

  MMResult result;
  Mat A = model_matrix(U);
  result.objective_trace.push_back(objective(M, A));

  bool converged = false;
  int t = 0;
  while (t < max_iter) {
    ++t;
    // single majorization step on w, projected to w >= 0; the gradient on
    // non-edge coordinates is a sum of two diagonal entries (>= 0), so the
    // clip pins them at exactly zero
    const Vec c = mask_halfvec(op, lap_adjoint(op, A));
    const Vec grad = lap_adjoint(op, M) - c;
    w = (w - step * grad).cwiseMax(0.0);
    for (int k = 0; k < op.num_pairs(); ++k)
      if (op.masked(k) && w[k] != 0.0)
        throw std::logic_error("mm_optimize: masked coordinate escaped zero");

    M = lap_apply(op, w);
    es.compute(M);
    U = es.eigenvectors();
    A = model_matrix(U);

    const double prev = result.objective_trace.back();
    const double cur = objective(M, A);
    result.objective_trace.push_back(cur);
    if (prev - cur < tol * std::max(prev, 1e-30)) {
      converged = true;
      break;
    }
  }

  result.iterations = t;
  result.converged = converged;
  result.weights = w;
  std::vector<WeightedGraph::Edge> edges;
  for (const auto& e : g_coarse.edges) {
    const double wk = w[halfvec_index(n, e.u, e.v)];
    if (wk > 0.0) edges.push_back({e.u, e.v, wk});
  }
  result.graph = WeightedGraph::build(n, std::move(edges),
                                      g_coarse.vertex_weights);
  return result;
}

TreeFeasibility tree_feasibility_check(const WeightedGraph& g_coarse,
                                       const Vec& target_lambda) {
  const int n = g_coarse.n;
  if (g_coarse.num_edges() != n - 1 || !is_connected(g_coarse))
    return TreeFeasibility::FeasibleUnknown;

  // hop diameter of a tree: BFS twice
  auto farthest = [&](int start) {
    std::vector<int> dist(n, -1);
    std::deque<int> queue = {start};
    dist[start] = 0;
    int best = start;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (dist[u] > dist[best]) best = u;
      for (const auto& nb : g_coarse.adjacency[u])
        if (dist[nb.v] < 0) {
          dist[nb.v] = dist[u] + 1;
          queue.push_back(nb.v);
        }
    }
    return std::make_pair(best, dist[best]);
  };
  const int tip = farthest(0).first;
  const int diameter = farthest(tip).second;

  Vec sorted = target_lambda;
  std::sort(sorted.begin(), sorted.end());
  const double tol = 1e-12 * std::max(1.0, sorted.cwiseAbs().maxCoeff());
  int distinct = sorted.size() > 0 ? 1 : 0;
  for (int i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] > tol) ++distinct;

  return distinct <= diameter ? TreeFeasibility::ProvablyInfeasible
                              : TreeFeasibility::FeasibleUnknown;
}

}  // namespace coarsen
