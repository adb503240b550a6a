#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <coarsen/graph.hpp>

namespace coarsen {

// Synthetic graph families.  All generators return the largest connected
// component with unit edge weights, deterministically under the seed.
enum class GraphModel { ErdosRenyi, BarabasiAlbert, WattsStrogatz, Geometric };

std::string graph_model_name(GraphModel m);
GraphModel parse_graph_model(const std::string& name);

struct GeneratorParams {
  double er_p = -1.0;   // <= 0: use 0.1 * 512 / n
  int ba_m = 4;         // edges attached per new node
  int ws_k = 10;        // ring-lattice degree (even)
  double ws_p = 0.1;    // rewiring probability
  double geo_r = -1.0;  // <= 0: use 5.12 / sqrt(n)
  int geo_dim = 2;      // unit-cube dimension
};

WeightedGraph generate(GraphModel model, int n, std::uint64_t seed,
                       const GeneratorParams& params = {});

// The 25-size experiment ladder 512, 612, ..., 2912 split 5/5/15 in size
// order into train/validation/test.
struct ExperimentSplit {
  std::vector<WeightedGraph> train, val, test;
};

ExperimentSplit experiment_split(GraphModel model, std::uint64_t seed,
                                 const GeneratorParams& params = {});

// Subgraphs induced on the visited sets of simple random walks from
// uniformly sampled start vertices (walk_len steps each).  Transition
// probabilities are proportional to edge weight unless weighted is false.
struct WalkSubgraph {
  std::vector<int> vertices;  // original ids, ascending
  WeightedGraph graph;        // induced subgraph (local ids follow vertices)
};

std::vector<WalkSubgraph> random_walk_bootstrap(const WeightedGraph& g,
                                                int num_subgraphs, int walk_len,
                                                std::uint64_t seed,
                                                bool weighted = true);

}  // namespace coarsen
