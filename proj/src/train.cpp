#include <coarsen/train.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coarsen {

Adam::Adam(double lr, const std::vector<Mat>& params) : lr_(lr) {
  if (!(lr > 0.0)) throw std::invalid_argument("Adam: learning rate must be > 0");
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const Mat& p : params) {
    m_.push_back(Mat::Zero(p.rows(), p.cols()));
    v_.push_back(Mat::Zero(p.rows(), p.cols()));
  }
}

void Adam::step(std::vector<Mat>& params, const std::vector<Mat>& grads) {
  if (params.size() != m_.size())
    throw std::invalid_argument("Adam::step: parameter count changed");
  if (grads.size() != params.size())
    throw std::invalid_argument("Adam::step: one gradient per parameter required");
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  ++t_;
  const double c1 = 1.0 - std::pow(kBeta1, t_);
  const double c2 = 1.0 - std::pow(kBeta2, t_);
  for (size_t i = 0; i < params.size(); ++i) {
    Mat g = grads[i].size() != 0
                ? grads[i]
                : Mat::Zero(params[i].rows(), params[i].cols());
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g;
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g.cwiseProduct(g);
    const Mat mhat = m_[i] / c1;
    const Mat vhat = v_[i] / c2;
    params[i] -= lr_ * (mhat.array() / (vhat.array().sqrt() + kEps)).matrix();
  }
}

void seed_all(TrainConfig& cfg, std::uint64_t seed) {
  cfg.coarsen.seed = seed;
  cfg.loss.seed = seed;
  cfg.model.seed = seed;
}

namespace {

// Everything about one graph that stays fixed across epochs.
struct GraphTask {
  CoarseningResult result;
  std::vector<EdgeSubgraph> subs;
  std::vector<SubgraphBatch> batches;
  LossPlan plan;
  Vec induced;  // coarse edge weights as summed by the coarsening
};

GraphTask prepare(const WeightedGraph& g, const TrainConfig& cfg) {
  GraphTask t;
  t.result = coarsen(g, cfg.coarsen);
  t.subs = extract_edge_subgraphs(g, t.result, cfg.crossing_feature_one);
  t.batches = make_batches(t.subs, cfg.batch);
  const TestVectors tv = make_test_vectors(g, cfg.loss);
  t.plan = LossPlan::build(g, t.result, cfg.loss, tv);
  t.induced = Vec(t.result.coarse.edges.size());
  for (int e = 0; e < static_cast<int>(t.result.coarse.edges.size()); ++e)
    t.induced(e) = t.result.coarse.edges[e].w;
  return t;
}

Vec predict_task(const WeightModel& model, const GraphTask& t) {
  Vec w(t.induced.size());
  for (const SubgraphBatch& b : t.batches)
    w.segment(b.first_edge, b.count) = model.predict(b);
  return w;
}

double task_loss(const WeightModel& model, const GraphTask& t) {
  const Vec w = predict_task(model, t);
  if (!w.allFinite()) return std::numeric_limits<double>::quiet_NaN();
  return t.plan.value(w);
}

double mean_loss(const WeightModel& model, const std::vector<GraphTask>& tasks) {
  double sum = 0.0;
  for (const GraphTask& t : tasks) sum += task_loss(model, t);
  return sum / static_cast<double>(tasks.size());
}

}  // namespace

TrainResult train(const std::vector<WeightedGraph>& train_graphs,
                  const std::vector<WeightedGraph>& val_graphs,
                  const TrainConfig& cfg) {
  if (train_graphs.empty())
    throw std::invalid_argument("train: no training graphs");
  if (cfg.epochs < 1 || cfg.batch < 1)
    throw std::invalid_argument("train: epochs and batch must be >= 1");

  std::vector<GraphTask> tasks, val_tasks;
  tasks.reserve(train_graphs.size());
  for (const WeightedGraph& g : train_graphs) tasks.push_back(prepare(g, cfg));
  val_tasks.reserve(val_graphs.size());
  for (const WeightedGraph& g : val_graphs) val_tasks.push_back(prepare(g, cfg));
  const std::vector<GraphTask>& val_ref = val_tasks.empty() ? tasks : val_tasks;

  TrainResult out;
  out.model = WeightModel::init(cfg.model);
  out.best_val = std::numeric_limits<double>::infinity();
  WeightModel current = out.model;
  Adam opt(cfg.lr, current.params());
  ad::Tape tape;
  std::vector<Mat> param_grads;

  for (int gi = 0; gi < static_cast<int>(tasks.size()); ++gi) {
    GraphTask& task = tasks[gi];
    Vec w = predict_task(current, task);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      for (const SubgraphBatch& batch : task.batches) {
        tape.clear();
        const std::vector<ad::Var> pv = current.register_params(tape);
        const ad::Var outv = current.forward(tape, pv, batch);
        w.segment(batch.first_edge, batch.count) = tape.value(outv).col(0);
        const Vec grad = w.allFinite() ? task.plan.gradient(w) : Vec();
        bool sane = w.allFinite() && grad.allFinite();
        if (sane) {
          param_grads.assign(current.params().size(), Mat());
          tape.backward(outv, grad.segment(batch.first_edge, batch.count),
                        param_grads);
          for (const Mat& gm : param_grads) sane = sane && gm.allFinite();
        }
        if (sane) {
          opt.step(current.params(), param_grads);
          // Parameters this far outside any trainable range mean the update
          // rule has blown up even if no individual entry has overflowed yet.
          constexpr double kParamLimit = 1e50;
          for (const Mat& p : current.params())
            sane = sane && p.allFinite() &&
                   p.cwiseAbs().maxCoeff() <= kParamLimit;
        }
        if (!sane) {
          out.diverged = true;
          const double nan = std::numeric_limits<double>::quiet_NaN();
          out.history.push_back({gi, epoch, nan, nan});
          return out;
        }
      }
      const double train_loss = task_loss(current, task);
      const double val_loss = mean_loss(current, val_ref);
      out.history.push_back({gi, epoch, train_loss, val_loss});
      if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
        out.diverged = true;
        return out;
      }
      if (val_loss < out.best_val) {
        out.best_val = val_loss;
        out.model = current;
      }
      w = predict_task(current, task);
    }
  }
  if (!std::isfinite(out.best_val)) out.model = current;
  return out;
}

ApplyResult apply_model(const WeightModel& model, const WeightedGraph& g,
                        const TrainConfig& cfg) {
  GraphTask task = prepare(g, cfg);
  ApplyResult out;
  out.predicted = predict_task(model, task);
  out.loss_before = task.plan.value(task.induced);
  out.loss_after = task.plan.value(out.predicted);
  out.improvement_pct =
      out.loss_before != 0.0
          ? (out.loss_before - out.loss_after) / out.loss_before * 100.0
          : 0.0;
  out.result = std::move(task.result);
  if (out.predicted.size() > 0)
    out.result.coarse = reweighted(out.result.coarse, out.predicted);
  return out;
}

void save_checkpoint(const WeightModel& model, const std::string& path) {
  nlohmann::json j;
  const ModelConfig& cfg = model.config();
  j["architecture"] = arch_name(cfg.arch);
  j["hidden"] = cfg.hidden;
  j["blocks"] = cfg.blocks;
  j["mlp_layers"] = cfg.mlp_layers;
  j["seed"] = cfg.seed;
  nlohmann::json tensors = nlohmann::json::array();
  for (const Mat& p : model.params()) {
    nlohmann::json t;
    t["rows"] = p.rows();
    t["cols"] = p.cols();
    std::vector<double> data;
    data.reserve(p.size());
    for (int r = 0; r < p.rows(); ++r)
      for (int c = 0; c < p.cols(); ++c) data.push_back(p(r, c));
    t["data"] = std::move(data);
    tensors.push_back(std::move(t));
  }
  j["parameters"] = std::move(tensors);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << j.dump(2) << "\n";
}

WeightModel load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  nlohmann::json j;
  in >> j;
  ModelConfig cfg;
  cfg.arch = parse_arch(j.at("architecture").get<std::string>());
  cfg.hidden = j.at("hidden").get<int>();
  cfg.blocks = j.at("blocks").get<int>();
  cfg.mlp_layers = j.at("mlp_layers").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  WeightModel model = WeightModel::init(cfg);
  const auto& tensors = j.at("parameters");
  if (tensors.size() != model.params().size())
    throw std::runtime_error("checkpoint parameter count mismatch: " + path);
  for (size_t i = 0; i < model.params().size(); ++i) {
    Mat& p = model.params()[i];
    const auto& t = tensors[i];
    if (t.at("rows").get<int>() != p.rows() || t.at("cols").get<int>() != p.cols())
      throw std::runtime_error("checkpoint tensor shape mismatch: " + path);
    const auto data = t.at("data").get<std::vector<double>>();
    if (static_cast<int>(data.size()) != p.size())
      throw std::runtime_error("checkpoint tensor size mismatch: " + path);
    int idx = 0;
    for (int r = 0; r < p.rows(); ++r)
      for (int c = 0; c < p.cols(); ++c) p(r, c) = data[idx++];
  }
  return model;
}

}  // namespace coarsen
