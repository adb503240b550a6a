#include <coarsen/datagen.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include <coarsen/rng.hpp>

namespace coarsen {

std::string graph_model_name(GraphModel m) {
  switch (m) {
    case GraphModel::ErdosRenyi: return "er";
    case GraphModel::BarabasiAlbert: return "ba";
    case GraphModel::WattsStrogatz: return "ws";
    case GraphModel::Geometric: return "geo";
  }
  throw std::logic_error("graph_model_name: bad enum");
}

GraphModel parse_graph_model(const std::string& name) {
  if (name == "er") return GraphModel::ErdosRenyi;
  if (name == "ba") return GraphModel::BarabasiAlbert;
  if (name == "ws") return GraphModel::WattsStrogatz;
  if (name == "geo") return GraphModel::Geometric;
  throw std::invalid_argument("unknown graph model: " + name);
}

namespace {

std::vector<std::pair<int, int>> er_pairs(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform() < p) pairs.emplace_back(u, v);
  return pairs;
}

std::vector<std::pair<int, int>> ba_pairs(int n, int m, Rng& rng) {
  if (m < 1 || m >= n)
    throw std::invalid_argument("generate: need 1 <= ba_m < n");
  std::vector<std::pair<int, int>> pairs;
  // Preferential attachment by sampling from the endpoint-repetition list.
  std::vector<int> repeated;
  std::vector<int> targets(m);
  for (int i = 0; i < m; ++i) targets[i] = i;
  for (int source = m; source < n; ++source) {
    for (int t : targets) pairs.emplace_back(std::min(t, source), std::max(t, source));
    for (int t : targets) repeated.push_back(t);
    repeated.insert(repeated.end(), m, source);
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < m)
      chosen.insert(repeated[rng.uniform_int(0, static_cast<int>(repeated.size()) - 1)]);
    targets.assign(chosen.begin(), chosen.end());
  }
  return pairs;
}

std::vector<std::pair<int, int>> ws_pairs(int n, int k, double p, Rng& rng) {
  if (k < 2 || k % 2 != 0 || k >= n)
    throw std::invalid_argument("generate: need even 2 <= ws_k < n");
  std::set<std::pair<int, int>> edges;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (int j = 1; j <= k / 2; ++j)
    for (int u = 0; u < n; ++u) edges.insert(key(u, (u + j) % n));
  std::vector<int> degree(n, 0);
  for (const auto& e : edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  // Rewire the far endpoint of each lattice edge with probability p.
  for (int j = 1; j <= k / 2; ++j) {
    for (int u = 0; u < n; ++u) {
      if (!(rng.uniform() < p)) continue;
      const auto old = key(u, (u + j) % n);
      if (degree[u] >= n - 1) continue;           // nowhere to rewire to
      if (edges.find(old) == edges.end()) continue;  // already rewired away
      int w = rng.uniform_int(0, n - 1);
      while (w == u || edges.count(key(u, w)) > 0) w = rng.uniform_int(0, n - 1);
      edges.erase(old);
      --degree[old.first];
      --degree[old.second];
      edges.insert(key(u, w));
      ++degree[u];
      ++degree[w];
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<std::pair<int, int>> geo_pairs(int n, double r, int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("generate: geo_dim must be >= 1");
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d) pts[i][d] = rng.uniform();
  std::vector<std::pair<int, int>> pairs;
  const double r2 = r * r;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double d2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double diff = pts[u][d] - pts[v][d];
        d2 += diff * diff;
      }
      if (d2 <= r2) pairs.emplace_back(u, v);
    }
  return pairs;
}

// Largest connected component, relabeled to 0..size-1 preserving id order.
WeightedGraph largest_component(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : pairs) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(n, -1);
  int best = -1, best_size = 0, ncomp = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int size = 0;
    stack.push_back(s);
    comp[s] = ncomp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++size;
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    if (size > best_size) {
      best_size = size;
      best = ncomp;
    }
    ++ncomp;
  }
  std::vector<int> relabel(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (comp[v] == best) relabel[v] = next++;
  std::vector<WeightedGraph::Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs)
    if (comp[u] == best && comp[v] == best)
      edges.push_back({relabel[u], relabel[v], 1.0});
  return WeightedGraph::build(next, edges);
}

}  // namespace

WeightedGraph generate(GraphModel model, int n, std::uint64_t seed,
                       const GeneratorParams& params) {
  if (n < 16) throw std::invalid_argument("generate: n must be >= 16");
  Rng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  switch (model) {
    case GraphModel::ErdosRenyi: {
      const double p = params.er_p > 0.0 ? params.er_p : 0.1 * 512.0 / n;
      pairs = er_pairs(n, p, rng);
      break;
    }
    case GraphModel::BarabasiAlbert:
      pairs = ba_pairs(n, params.ba_m, rng);
      break;
    case GraphModel::WattsStrogatz:
      pairs = ws_pairs(n, params.ws_k, params.ws_p, rng);
      break;
    case GraphModel::Geometric: {
      const double r = params.geo_r > 0.0 ? params.geo_r : 5.12 / std::sqrt(n);
      pairs = geo_pairs(n, r, params.geo_dim, rng);
      break;
    }
  }
  return largest_component(n, pairs);
}

ExperimentSplit experiment_split(GraphModel model, std::uint64_t seed,
                                 const GeneratorParams& params) {
  Rng root(seed);
  ExperimentSplit split;
  for (int i = 0; i < 25; ++i) {
    const int n = 512 + 100 * i;
    WeightedGraph g = generate(model, n, root.child(i).seed(), params);
    if (i < 5)
      split.train.push_back(std::move(g));
    else if (i < 10)
      split.val.push_back(std::move(g));
    else
      split.test.push_back(std::move(g));
  }
  return split;
}

std::vector<WalkSubgraph> random_walk_bootstrap(const WeightedGraph& g,
                                                int num_subgraphs, int walk_len,
                                                std::uint64_t seed,
                                                bool weighted) {
  if (g.n < 1) throw std::invalid_argument("random_walk_bootstrap: empty graph");
  if (num_subgraphs < 1 || walk_len < 0)
    throw std::invalid_argument("random_walk_bootstrap: bad parameters");
  Rng root(seed);
  std::vector<WalkSubgraph> out;
  out.reserve(num_subgraphs);
  for (int s = 0; s < num_subgraphs; ++s) {
    Rng rng = root.child(s);
    int v = rng.uniform_int(0, g.n - 1);
    std::set<int> visited{v};
    for (int step = 0; step < walk_len; ++step) {
      const auto& nbrs = g.adjacency[v];
      if (nbrs.empty()) break;
      if (weighted) {
        double total = 0.0;
        for (const auto& nb : nbrs) total += nb.w;
        double x = rng.uniform() * total;
        int pick = static_cast<int>(nbrs.size()) - 1;
        for (int i = 0; i < static_cast<int>(nbrs.size()); ++i) {
          x -= nbrs[i].w;
          if (x < 0.0) {
            pick = i;
            break;
          }
        }
        v = nbrs[pick].v;
      } else {
        v = nbrs[rng.uniform_int(0, static_cast<int>(nbrs.size()) - 1)].v;
      }
      visited.insert(v);
    }
    WalkSubgraph ws;
    ws.vertices.assign(visited.begin(), visited.end());
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < static_cast<int>(ws.vertices.size()); ++i)
      local[ws.vertices[i]] = i;
    std::vector<WeightedGraph::Edge> edges;
    for (int u : ws.vertices)
      for (const auto& nb : g.adjacency[u])
        if (nb.v > u && local[nb.v] >= 0)
          edges.push_back({local[u], local[nb.v], nb.w});
    ws.graph = WeightedGraph::build(static_cast<int>(ws.vertices.size()), edges);
    out.push_back(std::move(ws));
  }
  return out;
}

}  // namespace coarsen
