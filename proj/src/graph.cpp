#include "coarsen/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace coarsen {

WeightedGraph WeightedGraph::build(int n, std::vector<Edge> edges,
                                   Vec vertex_weights) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
    if (!std::isfinite(e.w) || e.w <= 0.0)
      throw std::invalid_argument("graph: edge weight must be finite and > 0");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
      throw std::invalid_argument("graph: duplicate edge");

  if (vertex_weights.size() == 0) vertex_weights = Vec::Ones(n);
  if (vertex_weights.size() != n)
    throw std::invalid_argument("graph: vertex weight count != n");
  for (int i = 0; i < n; ++i)
    if (!std::isfinite(vertex_weights[i]) || vertex_weights[i] <= 0.0)
      throw std::invalid_argument(
          "graph: vertex weight must be finite and > 0");

  WeightedGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.vertex_weights = std::move(vertex_weights);
  g.adjacency.assign(n, {});
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edges[e];
    g.adjacency[ed.u].push_back({ed.v, ed.w, e});
    g.adjacency[ed.v].push_back({ed.u, ed.w, e});
  }
  return g;
}

Vec WeightedGraph::weighted_degrees() const {
  Vec d = Vec::Zero(n);
  for (const Edge& e : edges) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

std::vector<int> WeightedGraph::unweighted_degrees() const {
  std::vector<int> d(n, 0);
  for (const Edge& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

double WeightedGraph::total_edge_weight() const {
  double s = 0.0;
  for (const Edge& e : edges) s += e.w;
  return s;
}

bool is_connected(const WeightedGraph& g) {
  if (g.n <= 1) return true;
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& nb : g.adjacency[u])
      if (!seen[nb.v]) {
        seen[nb.v] = 1;
        ++count;
        stack.push_back(nb.v);
      }
  }
  return count == g.n;
}

Partition Partition::from_assignment(int n_coarse, std::vector<int> assign) {
  const int n = static_cast<int>(assign.size());
  if (n_coarse < 1 || n_coarse > n)
    throw std::invalid_argument("partition: n_coarse out of range");
  std::vector<int> sizes(n_coarse, 0);
  for (int a : assign) {
    if (a < 0 || a >= n_coarse)
      throw std::invalid_argument("partition: cluster id out of range");
    ++sizes[a];
  }
  for (int r = 0; r < n_coarse; ++r)
    if (sizes[r] == 0)
      throw std::invalid_argument("partition: empty cluster (not surjective)");
  Partition p;
  p.n = n;
  p.n_coarse = n_coarse;
  p.assign = std::move(assign);
  p.cluster_sizes = std::move(sizes);
  return p;
}

std::vector<std::vector<int>> Partition::clusters() const {
  std::vector<std::vector<int>> out(n_coarse);
  for (int r = 0; r < n_coarse; ++r) out[r].reserve(cluster_sizes[r]);
  for (int i = 0; i < n; ++i) out[assign[i]].push_back(i);
  return out;
}

Partition identity_partition(int n) {
  std::vector<int> assign(n);
  for (int i = 0; i < n; ++i) assign[i] = i;
  return Partition::from_assignment(n, std::move(assign));
}

bool clusters_connected(const WeightedGraph& g, const Partition& p) {
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack;
  for (const auto& members : p.clusters()) {
    stack.assign(1, members[0]);
    seen[members[0]] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& nb : g.adjacency[u])
        if (!seen[nb.v] && p.assign[nb.v] == p.assign[u]) {
          seen[nb.v] = 1;
          ++reached;
          stack.push_back(nb.v);
        }
    }
    if (reached != static_cast<int>(members.size())) return false;
  }
  return true;
}

WeightedGraph induce_coarse_graph(const WeightedGraph& g, const Partition& p) {
  if (p.n != g.n)
    throw std::invalid_argument("induce: partition size != graph size");
  std::map<std::pair<int, int>, double> acc;
  for (const auto& e : g.edges) {
    int r = p.assign[e.u];
    int s = p.assign[e.v];
    if (r == s) continue;
    if (r > s) std::swap(r, s);
    acc[{r, s}] += e.w;
  }
  std::vector<WeightedGraph::Edge> coarse_edges;
  coarse_edges.reserve(acc.size());
  for (const auto& [key, w] : acc) coarse_edges.push_back({key.first, key.second, w});
  Vec gamma(p.n_coarse);
  for (int r = 0; r < p.n_coarse; ++r)
    gamma[r] = static_cast<double>(p.cluster_sizes[r]);
  return WeightedGraph::build(p.n_coarse, std::move(coarse_edges),
                              std::move(gamma));
}

CoarseningMatrices coarsening_matrices(const Partition& p) {
  std::vector<Eigen::Triplet<double>> tp, tplus;
  tp.reserve(p.n);
  tplus.reserve(p.n);
  for (int i = 0; i < p.n; ++i) {
    const int r = p.assign[i];
    tp.emplace_back(r, i, 1.0 / static_cast<double>(p.cluster_sizes[r]));
    tplus.emplace_back(i, r, 1.0);
  }
  CoarseningMatrices m;
  m.P.resize(p.n_coarse, p.n);
  m.P.setFromTriplets(tp.begin(), tp.end());
  m.P_plus.resize(p.n, p.n_coarse);
  m.P_plus.setFromTriplets(tplus.begin(), tplus.end());
  m.gamma.resize(p.n_coarse);
  for (int r = 0; r < p.n_coarse; ++r)
    m.gamma[r] = static_cast<double>(p.cluster_sizes[r]);
  return m;
}

WeightedGraph reweighted(const WeightedGraph& g, const Vec& w) {
  if (w.size() != g.num_edges())
    throw std::invalid_argument("reweighted: weight count != edge count");
  std::vector<WeightedGraph::Edge> edges = g.edges;
  for (int e = 0; e < g.num_edges(); ++e) edges[e].w = w[e];
  return WeightedGraph::build(g.n, std::move(edges), g.vertex_weights);
}

Vec project_mean(const Partition& p, const Vec& x) {
  if (x.size() != p.n) throw std::invalid_argument("project: size mismatch");
  Vec out = Vec::Zero(p.n_coarse);
  for (int i = 0; i < p.n; ++i) out[p.assign[i]] += x[i];
  for (int r = 0; r < p.n_coarse; ++r)
    out[r] /= static_cast<double>(p.cluster_sizes[r]);
  return out;
}

Vec lift_copy(const Partition& p, const Vec& xc) {
  if (xc.size() != p.n_coarse)
    throw std::invalid_argument("lift: size mismatch");
  Vec out(p.n);
  for (int i = 0; i < p.n; ++i) out[i] = xc[p.assign[i]];
  return out;
}

}  // namespace coarsen
