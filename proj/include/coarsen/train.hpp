#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <coarsen/coarsening.hpp>
#include <coarsen/gnn.hpp>
#include <coarsen/losses.hpp>

namespace coarsen {

// Adam optimizer over a parameter tensor list (beta1 0.9, beta2 0.999,
// epsilon 1e-8, bias-corrected).
class Adam {
 public:
  Adam(double lr, const std::vector<Mat>& params);
  void step(std::vector<Mat>& params, const std::vector<Mat>& grads);

 private:
  double lr_;
  int t_ = 0;
  std::vector<Mat> m_, v_;
};

struct TrainConfig {
  CoarseningConfig coarsen;
  LossSpec loss;
  ModelConfig model;
  int epochs = 50;
  double lr = 1e-3;
  int batch = 600;   // max edge subgraphs per gradient step
  bool crossing_feature_one = false;
};

// Sets every seeded sub-config (coarsening, loss sampling, model init) from
// one master seed.
void seed_all(TrainConfig& cfg, std::uint64_t seed);

struct EpochStats {
  int graph = 0;      // index into train_graphs
  int epoch = 0;      // epoch within that graph
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainResult {
  WeightModel model;  // best-validation checkpoint (last state if none finite)
  std::vector<EpochStats> history;
  bool diverged = false;
  double best_val = 0.0;
};

// Trains one shared weight model over the training graphs sequentially: for
// each graph, coarsen once, then run cfg.epochs epochs of batched gradient
// steps against the configured loss, validating after every epoch on the
// validation graphs (falling back to the training graphs when none are
// given).  A non-finite loss, prediction, or gradient — or parameters leaving
// any numerically meaningful range — stops training and sets `diverged`,
// returning the best checkpoint so far with the history.
TrainResult train(const std::vector<WeightedGraph>& train_graphs,
                  const std::vector<WeightedGraph>& val_graphs,
                  const TrainConfig& cfg);

struct ApplyResult {
  CoarseningResult result;  // coarse weights replaced by the predictions
  Vec predicted;            // per coarse edge
  double loss_before = 0.0;   // at the induced (summed) weights
  double loss_after = 0.0;    // at the predicted weights
  double improvement_pct = 0.0;  // (before - after) / before * 100, 0 if before == 0
};

// Coarsens g per cfg and re-weights the coarse edges with the model.
ApplyResult apply_model(const WeightModel& model, const WeightedGraph& g,
                        const TrainConfig& cfg);

// JSON checkpoint of architecture plus all parameter tensors; reload is
// bit-exact.
void save_checkpoint(const WeightModel& model, const std::string& path);
WeightModel load_checkpoint(const std::string& path);

}  // namespace coarsen
