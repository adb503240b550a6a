#include "coarsen/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <utility>

#include "coarsen/operators.hpp"
#include "coarsen/rng.hpp"
#include "coarsen/spectral.hpp"

namespace coarsen {

std::string algorithm_name(CoarseningAlgorithm a) {
  switch (a) {
    case CoarseningAlgorithm::Baseline: return "bl";
    case CoarseningAlgorithm::HeavyEdge: return "heavy_edge";
    case CoarseningAlgorithm::AlgebraicDistance: return "alg_dist";
    case CoarseningAlgorithm::Affinity: return "affinity";
    case CoarseningAlgorithm::LocalVarEdge: return "lv_edge";
    case CoarseningAlgorithm::LocalVarNeigh: return "lv_neigh";
  }
  throw std::logic_error("algorithm_name: bad enum");
}

CoarseningAlgorithm parse_algorithm(const std::string& name) {
  if (name == "bl") return CoarseningAlgorithm::Baseline;
  if (name == "heavy_edge") return CoarseningAlgorithm::HeavyEdge;
  if (name == "alg_dist") return CoarseningAlgorithm::AlgebraicDistance;
  if (name == "affinity") return CoarseningAlgorithm::Affinity;
  if (name == "lv_edge") return CoarseningAlgorithm::LocalVarEdge;
  if (name == "lv_neigh") return CoarseningAlgorithm::LocalVarNeigh;
  throw std::invalid_argument("unknown coarsening algorithm '" + name + "'");
}

int target_coarse_size(int n, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0))
    throw std::invalid_argument("coarsen: ratio must be in [0, 1)");
  const int target = static_cast<int>(std::lround((1.0 - ratio) * n));
  if (target < 2)
    throw std::invalid_argument("coarsen: ratio leaves fewer than 2 vertices");
  return std::min(target, n);
}

namespace {

/// A candidate contraction set with its priority (lower = contracted
/// earlier). For neighborhood candidates members[0] is the center, so any
/// prefix keeps the set connected.
struct Candidate {
  double priority = 0.0;
  std::vector<int> members;
};

/// Scored edge for matching-based levels.
struct ScoredEdge {
  double priority = 0.0;  // lower contracts first
  int u = 0;
  int v = 0;
};

void sort_scored(std::vector<ScoredEdge>& s) {
  std::sort(s.begin(), s.end(), [](const ScoredEdge& a, const ScoredEdge& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
}

/// Greedy maximal matching over priority-sorted edges; pairs are returned in
/// acceptance order.
std::vector<std::pair<int, int>> greedy_matching(
    int n, const std::vector<ScoredEdge>& sorted) {
  std::vector<char> used(n, 0);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : sorted) {
    if (used[e.u] || used[e.v]) continue;
    used[e.u] = used[e.v] = 1;
    pairs.emplace_back(e.u, e.v);
  }
  return pairs;
}

std::vector<std::pair<int, int>> heavy_edge_pairs(const WeightedGraph& g) {
  const Vec d = g.weighted_degrees();
  std::vector<ScoredEdge> scored;
  scored.reserve(g.edges.size());
  for (const auto& e : g.edges)
    scored.push_back({-e.w / std::max(d[e.u], d[e.v]), e.u, e.v});
  sort_scored(scored);
  return greedy_matching(g.n, scored);
}

Mat random_test_vectors(const WeightedGraph& g, int q, Rng& rng) {
  Mat X(g.n, q);
  for (int c = 0; c < q; ++c)
    for (int i = 0; i < g.n; ++i) X(i, c) = rng.uniform(-0.5, 0.5);
  return X;
}

std::vector<std::pair<int, int>> algebraic_distance_pairs(
    const WeightedGraph& g, int q, int sweeps, double omega, Rng rng) {
  Mat X = random_test_vectors(g, q, rng);
  const Vec d = g.weighted_degrees();
  for (int s = 0; s < sweeps; ++s) {
    Mat WX = Mat::Zero(g.n, q);
    for (const auto& e : g.edges) {
      WX.row(e.u) += e.w * X.row(e.v);
      WX.row(e.v) += e.w * X.row(e.u);
    }
    for (int i = 0; i < g.n; ++i)
      X.row(i) = (1.0 - omega) * X.row(i) + omega / d[i] * WX.row(i);
  }
  std::vector<ScoredEdge> scored;
  scored.reserve(g.edges.size());
  for (const auto& e : g.edges)
    scored.push_back({(X.row(e.u) - X.row(e.v)).norm(), e.u, e.v});
  sort_scored(scored);
  return greedy_matching(g.n, scored);
}

std::vector<std::pair<int, int>> affinity_pairs(const WeightedGraph& g, int q,
                                                Rng rng) {
  Mat X = random_test_vectors(g, q, rng);
  const Vec d = g.weighted_degrees();
  // one Gauss-Seidel sweep toward L x = 0, in ascending vertex order
  for (int i = 0; i < g.n; ++i) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(q);
    for (const auto& nb : g.adjacency[i]) acc += nb.w * X.row(nb.v);
    X.row(i) = acc / d[i];
  }
  const Vec sq = X.rowwise().squaredNorm();
  std::vector<ScoredEdge> scored;
  scored.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    const double ip = X.row(e.u).dot(X.row(e.v));
    const double denom = sq[e.u] * sq[e.v];
    const double affinity = denom > 0.0 ? ip * ip / denom : 0.0;
    scored.push_back({-affinity, e.u, e.v});
  }
  sort_scored(scored);
  return greedy_matching(g.n, scored);
}

/// Variation cost of contracting `members`: energy of the leading
/// eigenvector subspace restricted to the set's internal edges, per unit of
/// size reduction. V holds the subspace columns for the current level.
double variation_cost(const WeightedGraph& g, const Mat& V,
                      const std::vector<int>& members,
                      const std::vector<char>& in_set) {
  double energy = 0.0;
  for (int a : members)
    for (const auto& nb : g.adjacency[a]) {
      if (nb.v <= a || !in_set[nb.v]) continue;  // each internal edge once
      energy += nb.w * (V.row(a) - V.row(nb.v)).squaredNorm();
    }
  return energy / static_cast<double>(members.size() - 1);
}

std::vector<Candidate> local_variation_candidates(const WeightedGraph& g,
                                                  bool neighborhoods,
                                                  int subspace_dim) {
  const SpMat L = laplacian(g, OperatorKind::Combinatorial);
  const Mat V =
      eigen_smallest_k(L, std::min(subspace_dim, g.n)).eigenvectors;
  std::vector<char> in_set(g.n, 0);
  std::vector<Candidate> cands;
  if (neighborhoods) {
    cands.reserve(g.n);
    for (int v = 0; v < g.n; ++v) {
      if (g.adjacency[v].empty()) continue;
      Candidate c;
      c.members.push_back(v);
      for (const auto& nb : g.adjacency[v]) c.members.push_back(nb.v);
      std::sort(c.members.begin() + 1, c.members.end());
      for (int m : c.members) in_set[m] = 1;
      c.priority = variation_cost(g, V, c.members, in_set);
      for (int m : c.members) in_set[m] = 0;
      cands.push_back(std::move(c));
    }
  } else {
    cands.reserve(g.edges.size());
    for (const auto& e : g.edges) {
      Candidate c;
      c.members = {e.u, e.v};
      in_set[e.u] = in_set[e.v] = 1;
      c.priority = variation_cost(g, V, c.members, in_set);
      in_set[e.u] = in_set[e.v] = 0;
      cands.push_back(std::move(c));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.priority != b.priority) return a.priority < b.priority;
              return a.members < b.members;
            });
  return cands;
}

/// Greedy disjoint selection of candidate sets within a reduction budget.
/// A set that would overshoot is truncated to a connected prefix that lands
/// exactly on the budget.
std::vector<std::vector<int>> select_groups(
    int n, const std::vector<Candidate>& cands, int budget) {
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> groups;
  for (const auto& c : cands) {
    if (budget <= 0) break;
    bool free = true;
    for (int m : c.members)
      if (used[m]) {
        free = false;
        break;
      }
    if (!free) continue;
    std::vector<int> take = c.members;
    if (static_cast<int>(take.size()) - 1 > budget)
      take.resize(budget + 1);  // members[0] is the center: prefix stays connected
    for (int m : take) used[m] = 1;
    budget -= static_cast<int>(take.size()) - 1;
    groups.push_back(std::move(take));
  }
  return groups;
}

/// Contract `groups` (disjoint vertex sets of g); every other vertex stays a
/// singleton. New ids are allocated in order of each set's first-seen old
/// id, so the relabeling is deterministic.
Partition contraction_partition(int n,
                                const std::vector<std::vector<int>>& groups) {
  std::vector<int> group_of(n, -1);
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi)
    for (int m : groups[gi]) group_of[m] = gi;
  std::vector<int> group_new_id(groups.size(), -1);
  std::vector<int> assign(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    const int gi = group_of[v];
    if (gi < 0) {
      assign[v] = next++;
    } else if (group_new_id[gi] < 0) {
      group_new_id[gi] = next++;
      assign[v] = group_new_id[gi];
    } else {
      assign[v] = group_new_id[gi];
    }
  }
  return Partition::from_assignment(next, std::move(assign));
}

Partition baseline_partition(const WeightedGraph& g, int target, Rng rng) {
  const std::vector<int> landmarks =
      rng.sample_without_replacement(g.n, target);
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> best(g.n, kUnreached), ties(g.n, 0), choice(g.n, -1);
  std::vector<int> dist(g.n);
  std::deque<int> queue;
  for (int li = 0; li < target; ++li) {
    // BFS hop distances from landmark li
    std::fill(dist.begin(), dist.end(), kUnreached);
    dist[landmarks[li]] = 0;
    queue.assign(1, landmarks[li]);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& nb : g.adjacency[u])
        if (dist[nb.v] == kUnreached) {
          dist[nb.v] = dist[u] + 1;
          queue.push_back(nb.v);
        }
    }
    for (int v = 0; v < g.n; ++v) {
      if (dist[v] < best[v]) {
        best[v] = dist[v];
        ties[v] = 1;
        choice[v] = li;
      } else if (dist[v] == best[v] && dist[v] != kUnreached) {
        // reservoir step: each tied landmark ends up chosen uniformly
        ++ties[v];
        if (rng.uniform() * ties[v] < 1.0) choice[v] = li;
      }
    }
  }
  for (int v = 0; v < g.n; ++v)
    if (choice[v] < 0)
      throw std::runtime_error("baseline coarsening: unreachable vertex");
  return Partition::from_assignment(target, std::move(choice));
}

std::vector<int> compose(const std::vector<int>& outer_assign,
                         const std::vector<int>& inner_assign) {
  std::vector<int> out(inner_assign.size());
  for (std::size_t i = 0; i < inner_assign.size(); ++i)
    out[i] = outer_assign[inner_assign[i]];
  return out;
}

}  // namespace

CoarseningResult coarsen(const WeightedGraph& g, const CoarseningConfig& cfg) {
  if (g.n < 2) throw std::invalid_argument("coarsen: graph too small");
  if (!is_connected(g))
    throw std::invalid_argument("coarsen: graph must be connected");
  const int target = target_coarse_size(g.n, cfg.ratio);
  Rng root(cfg.seed);

  Partition partition = identity_partition(g.n);
  if (target < g.n) {
    if (cfg.algorithm == CoarseningAlgorithm::Baseline) {
      partition = baseline_partition(g, target, root.child(0));
    } else {
      WeightedGraph cur = g;
      std::vector<int> assign = partition.assign;
      int level = 0;
      while (cur.n > target) {
        const int budget = cur.n - target;
        std::vector<std::vector<int>> groups;
        if (cfg.algorithm == CoarseningAlgorithm::LocalVarEdge ||
            cfg.algorithm == CoarseningAlgorithm::LocalVarNeigh) {
          const bool neigh =
              cfg.algorithm == CoarseningAlgorithm::LocalVarNeigh;
          const int dim = std::min(cfg.lv_max_subspace, target);
          groups = select_groups(
              cur.n, local_variation_candidates(cur, neigh, dim), budget);
        } else {
          std::vector<std::pair<int, int>> pairs;
          switch (cfg.algorithm) {
            case CoarseningAlgorithm::HeavyEdge:
              pairs = heavy_edge_pairs(cur);
              break;
            case CoarseningAlgorithm::AlgebraicDistance:
              pairs = algebraic_distance_pairs(cur, cfg.q_vectors,
                                               cfg.relaxation_sweeps,
                                               cfg.jacobi_omega,
                                               root.child(level + 1));
              break;
            case CoarseningAlgorithm::Affinity:
              pairs = affinity_pairs(cur, cfg.q_vectors,
                                     root.child(level + 1));
              break;
            default:
              throw std::logic_error("coarsen: unhandled algorithm");
          }
          const int take = std::min<int>(static_cast<int>(pairs.size()),
                                         budget);
          for (int i = 0; i < take; ++i)
            groups.push_back({pairs[i].first, pairs[i].second});
        }
        if (groups.empty())
          throw std::runtime_error(
              "coarsen: no contractable candidates before reaching target");
        const Partition level_p = contraction_partition(cur.n, groups);
        assign = compose(level_p.assign, assign);
        cur = induce_coarse_graph(cur, level_p);
        ++level;
      }
      partition =
          Partition::from_assignment(cur.n, std::move(assign));
    }
  }

  CoarseningResult r;
  r.original = g;
  r.partition = partition;
  r.coarse = induce_coarse_graph(g, partition);
  r.algorithm = algorithm_name(cfg.algorithm);
  r.ratio = 1.0 - static_cast<double>(partition.n_coarse) /
                      static_cast<double>(g.n);
  r.clusters_connected = clusters_connected(g, partition);
  return r;
}

}  // namespace coarsen
