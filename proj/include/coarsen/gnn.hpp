#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <coarsen/coarsening.hpp>
#include <coarsen/graph.hpp>
#include <coarsen/tape.hpp>

namespace coarsen {

// Local degree profile: per node (degree, min, max, mean, std) of the
// unweighted degrees of its neighbors.  Isolated nodes get all zeros; the
// std is the population standard deviation of the neighbor-degree multiset.
Mat ldp_features(const WeightedGraph& g);

// The subgraph of the original graph spanned by the two clusters of one
// coarse edge: node features plus the induced edges with their input
// features.
struct EdgeSubgraph {
  int coarse_edge = -1;        // index into the coarse graph's edge list
  std::vector<int> vertices;   // original vertex ids, ascending
  WeightedGraph graph;         // induced subgraph on `vertices` (local ids)
  Mat node_features;           // n_local x 5 local degree profiles
  Vec edge_features;           // m_local input features (edge weights)
};

// One subgraph per coarse edge, in coarse edge-list order.  Vertices are the
// union of the two endpoint clusters; edges are all induced (intra-cluster
// and crossing) edges.  When crossing_feature_one is set, the input feature
// of every crossing edge is forced to 1.0 instead of its original weight.
std::vector<EdgeSubgraph> extract_edge_subgraphs(const WeightedGraph& g,
                                                 const CoarseningResult& result,
                                                 bool crossing_feature_one = false);

// A run of consecutive subgraphs stacked block-diagonally so one forward
// pass evaluates them all: rows of node_features concatenate the per-
// subgraph feature matrices, adj_self and incidence are block diagonal, and
// pool averages each subgraph's rows into one output row.  Column j of
// incidence corresponds to row j of encoder_input; per subgraph the edge
// columns come first, then one self-loop column per vertex (feature 1.0).
struct SubgraphBatch {
  int first_edge = 0;   // coarse-edge index of output row 0
  int count = 0;        // number of subgraphs stacked
  Mat node_features;    // N x 5
  Mat encoder_input;    // (M + N) x 1
  SpMat adj_self;       // N x N
  SpMat incidence;      // N x (M + N)
  SpMat pool;           // count x N, row r averaging subgraph r's rows
};

SubgraphBatch make_batch(const std::vector<EdgeSubgraph>& subs, int first,
                         int count);

// Consecutive batches of at most batch_size subgraphs covering all of subs.
std::vector<SubgraphBatch> make_batches(const std::vector<EdgeSubgraph>& subs,
                                        int batch_size);

struct ModelConfig {
  enum class Arch { Gin, Mlp };
  Arch arch = Arch::Gin;
  int hidden = 50;
  int blocks = 3;       // message-passing blocks (Gin)
  int mlp_layers = 4;   // hidden layers (Mlp)
  std::uint64_t seed = 0;
};

const char* arch_name(ModelConfig::Arch arch);
ModelConfig::Arch parse_arch(const std::string& name);

// Weight-prediction model over edge subgraphs.  Two architectures share the
// interface: a message-passing network that sums neighbor and edge
// embeddings through a two-layer MLP per block, and a pooled-MLP baseline
// that never looks at the topology.  Both end in a linear head whose output
// is floored at 1 via 1 + relu(.), so predicted weights keep the coarse
// Laplacian positive semidefinite.
class WeightModel {
 public:
  // Fresh model with every tensor drawn uniform in [-a, a],
  // a = sqrt(6 / (fan_in + fan_out)) of the owning layer, from cfg.seed.
  static WeightModel init(const ModelConfig& cfg);

  const ModelConfig& config() const { return cfg_; }
  std::vector<Mat>& params() { return params_; }
  const std::vector<Mat>& params() const { return params_; }
  int num_parameters() const;  // total scalar parameter count

  // Record all parameter tensors on a tape (one node per slot, in slot
  // order).  Shared by every forward recorded on that tape.
  std::vector<ad::Var> register_params(ad::Tape& tape) const;

  // Record the forward pass for a stacked batch; the returned node holds a
  // count x 1 column of predicted weights (each >= 1).
  ad::Var forward(ad::Tape& tape, const std::vector<ad::Var>& pv,
                  const SubgraphBatch& batch) const;

  // Same computation without a tape.
  Vec predict(const SubgraphBatch& batch) const;

  // Convenience: predicted weights for all subgraphs, in order.
  Vec predict_all(const std::vector<EdgeSubgraph>& subs) const;

 private:
  ModelConfig cfg_;
  std::vector<Mat> params_;
};

}  // namespace coarsen
