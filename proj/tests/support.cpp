#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coarsen::testing {

WeightedGraph path_graph(int n, double w) {
  std::vector<WeightedGraph::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return WeightedGraph::build(n, edges);
}

WeightedGraph cycle_graph(int n, double w) {
  std::vector<WeightedGraph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return WeightedGraph::build(n, edges);
}

WeightedGraph star_graph(int leaves, double w) {
  std::vector<WeightedGraph::Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, w});
  return WeightedGraph::build(leaves + 1, edges);
}

WeightedGraph complete_graph(int n, double w) {
  std::vector<WeightedGraph::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  return WeightedGraph::build(n, edges);
}

WeightedGraph two_cluster_toy() {
  return WeightedGraph::build(6, {{0, 1, 1.0},
                                  {1, 2, 1.0},
                                  {0, 2, 1.0},
                                  {3, 4, 1.0},
                                  {4, 5, 1.0},
                                  {2, 3, 1.0},
                                  {0, 5, 1.0}});
}

Partition two_cluster_partition() {
  return Partition::from_assignment(2, {0, 0, 0, 1, 1, 1});
}

WeightedGraph random_connected_graph(int n, double extra_edge_prob, Rng& rng,
                                     bool unit_weights) {
  if (n < 2) throw std::invalid_argument("random_connected_graph: n < 2");
  auto weight = [&]() { return unit_weights ? 1.0 : 2.0 - 2.0 * rng.uniform(); };
  std::vector<WeightedGraph::Edge> edges;
  std::vector<char> has(static_cast<size_t>(n) * n, 0);
  auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (has[static_cast<size_t>(u) * n + v]) return;
    has[static_cast<size_t>(u) * n + v] = 1;
    edges.push_back({u, v, weight()});
  };
  for (int v = 1; v < n; ++v) add(rng.uniform_int(0, v - 1), v);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < extra_edge_prob) add(u, v);
  return WeightedGraph::build(n, edges);
}

Partition random_connected_partition(const WeightedGraph& g, int n_coarse,
                                     Rng& rng) {
  if (n_coarse < 1 || n_coarse > g.n)
    throw std::invalid_argument("random_connected_partition: bad n_coarse");
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int clusters = g.n;
  int stuck = 0;
  while (clusters > n_coarse) {
    const int e = rng.uniform_int(0, g.num_edges() - 1);
    const int ru = find(g.edges[e].u), rv = find(g.edges[e].v);
    if (ru == rv) {
      // After too many same-cluster draws, scan for any crossing edge.
      if (++stuck > 50 * g.n) {
        for (const auto& ed : g.edges) {
          const int a = find(ed.u), b = find(ed.v);
          if (a != b) {
            parent[a] = b;
            --clusters;
            break;
          }
        }
        stuck = 0;
      }
      continue;
    }
    parent[ru] = rv;
    --clusters;
    stuck = 0;
  }
  std::vector<int> label(g.n, -1);
  std::vector<int> assign(g.n);
  int next = 0;
  for (int v = 0; v < g.n; ++v) {
    const int r = find(v);
    if (label[r] < 0) label[r] = next++;
    assign[v] = label[r];
  }
  return Partition::from_assignment(next, std::move(assign));
}

Mat dense(const SpMat& a) { return Mat(a); }

double max_rel_diff(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (int i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return worst;
}

Vec central_difference(const std::function<double(const Vec&)>& f, const Vec& x,
                       double h_scale) {
  Vec g(x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double h = h_scale * std::max(1.0, std::abs(x[i]));
    Vec xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

bool gradients_close(const Vec& analytic, const Vec& numeric, double rel,
                     double abs) {
  if (analytic.size() != numeric.size()) return false;
  for (int i = 0; i < analytic.size(); ++i) {
    const double a = analytic[i], f = numeric[i];
    if (std::abs(a - f) > rel * std::max(std::abs(a), std::abs(f)) + abs)
      return false;
  }
  return true;
}

}  // namespace coarsen::testing
