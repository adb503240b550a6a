#include "coarsen/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace coarsen {

SpMat laplacian(const WeightedGraph& g, OperatorKind kind) {
  const Vec d = g.weighted_degrees();
  Vec scale;  // row/column scaling applied to D - W
  switch (kind) {
    case OperatorKind::Combinatorial:
      scale = Vec::Ones(g.n);
      break;
    case OperatorKind::Normalized:
      scale.resize(g.n);
      for (int i = 0; i < g.n; ++i) {
        if (d[i] <= 0.0)
          throw std::invalid_argument(
              "normalized laplacian: isolated vertex " + std::to_string(i));
        scale[i] = 1.0 / std::sqrt(d[i]);
      }
      break;
    case OperatorKind::DoublyWeighted:
      scale.resize(g.n);
      for (int i = 0; i < g.n; ++i)
        scale[i] = 1.0 / std::sqrt(g.vertex_weights[i]);
      break;
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.edges.size() * 2 + g.n);
  for (int i = 0; i < g.n; ++i) {
    const double diag =
        kind == OperatorKind::Normalized && d[i] > 0.0 ? 1.0
                                                       : d[i] * scale[i] * scale[i];
    trip.emplace_back(i, i, diag);
  }
  for (const auto& e : g.edges) {
    const double off = -e.w * scale[e.u] * scale[e.v];
    trip.emplace_back(e.u, e.v, off);
    trip.emplace_back(e.v, e.u, off);
  }
  SpMat L(g.n, g.n);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

ProjectionLift projection_lift(const Partition& p, const WeightedGraph& g,
                               const WeightedGraph& g_coarse,
                               OperatorKind kind) {
  if (p.n != g.n || p.n_coarse != g_coarse.n)
    throw std::invalid_argument("projection_lift: dimension mismatch");

  ProjectionLift pl;
  pl.proj.rows = p.n_coarse;
  pl.proj.cols = p.n;
  pl.lift.rows = p.n;
  pl.lift.cols = p.n_coarse;

  switch (kind) {
    case OperatorKind::Combinatorial: {
      pl.proj.apply = [p](const Vec& x) { return project_mean(p, x); };
      pl.lift.apply = [p](const Vec& xc) { return lift_copy(p, xc); };
      break;
    }
    case OperatorKind::DoublyWeighted: {
      Vec sqrt_gamma(p.n_coarse);
      for (int r = 0; r < p.n_coarse; ++r)
        sqrt_gamma[r] = std::sqrt(static_cast<double>(p.cluster_sizes[r]));
      // proj = G^{-1/2} P_plus^T : per-cluster sum scaled by 1/sqrt(gamma)
      pl.proj.apply = [p, sqrt_gamma](const Vec& x) {
        Vec out = Vec::Zero(p.n_coarse);
        for (int i = 0; i < p.n; ++i) out[p.assign[i]] += x[i];
        return Vec(out.cwiseQuotient(sqrt_gamma));
      };
      pl.lift.apply = [p, sqrt_gamma](const Vec& xc) {
        Vec out(p.n);
        for (int i = 0; i < p.n; ++i)
          out[i] = xc[p.assign[i]] / sqrt_gamma[p.assign[i]];
        return out;
      };
      break;
    }
    case OperatorKind::Normalized: {
      const Vec d = g.weighted_degrees();
      const Vec dc = g_coarse.weighted_degrees();
      for (int i = 0; i < g.n; ++i)
        if (d[i] <= 0.0)
          throw std::invalid_argument(
              "projection_lift: isolated fine vertex");
      for (int r = 0; r < g_coarse.n; ++r)
        if (dc[r] <= 0.0)
          throw std::invalid_argument(
              "projection_lift: isolated coarse vertex");
      const Vec inv_sqrt_d = d.cwiseSqrt().cwiseInverse();
      const Vec sqrt_dc = dc.cwiseSqrt();
      pl.proj.apply = [p, inv_sqrt_d, sqrt_dc](const Vec& x) {
        Vec out = project_mean(p, Vec(x.cwiseProduct(inv_sqrt_d)));
        return Vec(out.cwiseProduct(sqrt_dc));
      };
      pl.lift.apply = [p, inv_sqrt_d, sqrt_dc](const Vec& xc) {
        Vec out = lift_copy(p, Vec(xc.cwiseQuotient(sqrt_dc)));
        return Vec(out.cwiseQuotient(inv_sqrt_d));
      };
      break;
    }
  }
  return pl;
}

double quadratic_form(const SpMat& A, const Vec& x) {
  if (A.rows() != x.size())
    throw std::invalid_argument("quadratic_form: size mismatch");
  return x.dot(A * x);
}

double rayleigh_quotient(const SpMat& A, const Vec& x) {
  const double nrm2 = x.squaredNorm();
  if (nrm2 == 0.0)
    throw std::invalid_argument("rayleigh_quotient: zero vector");
  return quadratic_form(A, x) / nrm2;
}

double conductance(const WeightedGraph& g, const std::vector<int>& subset) {
  std::vector<char> in_s(g.n, 0);
  int count = 0;
  for (int v : subset) {
    if (v < 0 || v >= g.n)
      throw std::invalid_argument("conductance: vertex out of range");
    if (!in_s[v]) {
      in_s[v] = 1;
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("conductance: empty subset");
  if (count == g.n)
    throw std::invalid_argument("conductance: subset is the whole graph");

  double cut = 0.0, vol_s = 0.0, vol_rest = 0.0;
  for (const auto& e : g.edges) {
    const bool su = in_s[e.u], sv = in_s[e.v];
    if (su != sv) cut += e.w;
    // each endpoint contributes the edge weight to its side's volume
    (su ? vol_s : vol_rest) += e.w;
    (sv ? vol_s : vol_rest) += e.w;
  }
  if (cut == 0.0) return 0.0;
  return cut / std::min(vol_s, vol_rest);
}

}  // namespace coarsen
