#include <coarsen/gnn.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <coarsen/rng.hpp>

namespace coarsen {

Mat ldp_features(const WeightedGraph& g) {
  const std::vector<int> deg = g.unweighted_degrees();
  Mat f = Mat::Zero(g.n, 5);
  for (int v = 0; v < g.n; ++v) {
    const auto& nbrs = g.adjacency[v];
    f(v, 0) = deg[v];
    if (nbrs.empty()) continue;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& nb : nbrs) {
      const double d = deg[nb.v];
      mn = std::min(mn, d);
      mx = std::max(mx, d);
      sum += d;
    }
    const double mean = sum / static_cast<double>(nbrs.size());
    double var = 0.0;
    for (const auto& nb : nbrs) {
      const double d = deg[nb.v] - mean;
      var += d * d;
    }
    var /= static_cast<double>(nbrs.size());
    f(v, 1) = mn;
    f(v, 2) = mx;
    f(v, 3) = mean;
    f(v, 4) = std::sqrt(std::max(var, 0.0));
  }
  return f;
}

namespace {

EdgeSubgraph build_subgraph(const WeightedGraph& g, const Mat& host_ldp,
                            const Partition& p, int coarse_edge, int cr,
                            int cs, bool crossing_feature_one) {
  EdgeSubgraph sub;
  sub.coarse_edge = coarse_edge;
  for (int v = 0; v < g.n; ++v)
    if (p.assign[v] == cr || p.assign[v] == cs) sub.vertices.push_back(v);
  const int n_local = static_cast<int>(sub.vertices.size());
  std::unordered_map<int, int> local;
  local.reserve(sub.vertices.size());
  for (int i = 0; i < n_local; ++i) local[sub.vertices[i]] = i;

  std::vector<WeightedGraph::Edge> edges;
  std::vector<bool> crossing;
  for (int i = 0; i < n_local; ++i) {
    const int u = sub.vertices[i];
    for (const auto& nb : g.adjacency[u]) {
      if (nb.v <= u) continue;
      auto it = local.find(nb.v);
      if (it == local.end()) continue;
      edges.push_back({i, it->second, nb.w});
      crossing.push_back(p.assign[u] != p.assign[nb.v]);
    }
  }
  sub.graph = WeightedGraph::build(n_local, edges);
  // Degree profiles come from the host graph, not the extracted subgraph:
  // a node's degree environment in the full graph (dense region vs. sparse
  // fringe) is information the tiny subgraph cannot reconstruct on its own.
  sub.node_features = Mat(n_local, 5);
  for (int i = 0; i < n_local; ++i)
    sub.node_features.row(i) = host_ldp.row(sub.vertices[i]);

  const int m = static_cast<int>(edges.size());
  sub.edge_features = Vec(m);
  for (int j = 0; j < m; ++j)
    sub.edge_features(j) = (crossing_feature_one && crossing[j]) ? 1.0 : edges[j].w;
  return sub;
}

}  // namespace

std::vector<EdgeSubgraph> extract_edge_subgraphs(const WeightedGraph& g,
                                                 const CoarseningResult& result,
                                                 bool crossing_feature_one) {
  std::vector<EdgeSubgraph> subs;
  subs.reserve(result.coarse.edges.size());
  // Standardize the profile per host graph (z-score each column).  What
  // matters to the weight map is each node's degree environment relative to
  // the rest of the host — dense core versus sparse fringe — not the raw
  // neighbor counts, whose family-dependent scale (say ~10 vs ~70) inflates
  // pooled activations until optimization destabilizes.  Centering also
  // keeps the per-subgraph readouts spread out, so the clamped output head
  // never sees the whole population on one side of its dead zone.
  Mat host_ldp = ldp_features(g);
  for (int c = 0; c < host_ldp.cols(); ++c) {
    const double mu = host_ldp.col(c).mean();
    const double sigma = std::sqrt(
        (host_ldp.col(c).array() - mu).square().mean());
    host_ldp.col(c) = (host_ldp.col(c).array() - mu) / std::max(sigma, 0.05);
  }
  for (int e = 0; e < static_cast<int>(result.coarse.edges.size()); ++e) {
    const WeightedGraph::Edge& ce = result.coarse.edges[e];
    subs.push_back(build_subgraph(g, host_ldp, result.partition, e, ce.u,
                                  ce.v, crossing_feature_one));
  }
  return subs;
}

SubgraphBatch make_batch(const std::vector<EdgeSubgraph>& subs, int first,
                         int count) {
  if (first < 0 || count < 1 ||
      first + count > static_cast<int>(subs.size()))
    throw std::invalid_argument("make_batch: bad range");
  SubgraphBatch b;
  b.first_edge = subs[first].coarse_edge;
  b.count = count;
  int total_n = 0, total_m = 0;
  for (int i = first; i < first + count; ++i) {
    total_n += subs[i].graph.n;
    total_m += static_cast<int>(subs[i].graph.edges.size());
  }
  b.node_features = Mat(total_n, 5);
  b.encoder_input = Mat::Ones(total_m + total_n, 1);
  std::vector<Eigen::Triplet<double>> ta, ti, tp;
  ta.reserve(2 * total_m + total_n);
  ti.reserve(2 * total_m + total_n);
  tp.reserve(total_n);
  int row = 0, col = 0;
  for (int i = first; i < first + count; ++i) {
    const EdgeSubgraph& s = subs[i];
    const int n = s.graph.n;
    const int m = static_cast<int>(s.graph.edges.size());
    b.node_features.middleRows(row, n) = s.node_features;
    b.encoder_input.block(col, 0, m, 1) = s.edge_features;
    for (int j = 0; j < m; ++j) {
      const WeightedGraph::Edge& e = s.graph.edges[j];
      ta.emplace_back(row + e.u, row + e.v, 1.0);
      ta.emplace_back(row + e.v, row + e.u, 1.0);
      ti.emplace_back(row + e.u, col + j, 1.0);
      ti.emplace_back(row + e.v, col + j, 1.0);
    }
    for (int v = 0; v < n; ++v) {
      ta.emplace_back(row + v, row + v, 1.0);
      ti.emplace_back(row + v, col + m + v, 1.0);
      tp.emplace_back(i - first, row + v, 1.0 / static_cast<double>(n));
    }
    row += n;
    col += m + n;
  }
  b.adj_self.resize(total_n, total_n);
  b.adj_self.setFromTriplets(ta.begin(), ta.end());
  b.incidence.resize(total_n, total_m + total_n);
  b.incidence.setFromTriplets(ti.begin(), ti.end());
  b.pool.resize(count, total_n);
  b.pool.setFromTriplets(tp.begin(), tp.end());
  return b;
}

std::vector<SubgraphBatch> make_batches(const std::vector<EdgeSubgraph>& subs,
                                        int batch_size) {
  if (batch_size < 1) throw std::invalid_argument("make_batches: batch_size < 1");
  std::vector<SubgraphBatch> out;
  const int total = static_cast<int>(subs.size());
  for (int start = 0; start < total; start += batch_size)
    out.push_back(make_batch(subs, start, std::min(batch_size, total - start)));
  return out;
}

const char* arch_name(ModelConfig::Arch arch) {
  return arch == ModelConfig::Arch::Gin ? "gin" : "mlp";
}

ModelConfig::Arch parse_arch(const std::string& name) {
  if (name == "gin") return ModelConfig::Arch::Gin;
  if (name == "mlp") return ModelConfig::Arch::Mlp;
  throw std::invalid_argument("unknown architecture: " + name);
}

namespace {

// Appends one linear layer (out x in weight, then 1 x out bias), both drawn
// uniform in [-a, a] with a = sqrt(6 / (in + out)).
void push_linear(Rng& rng, int out, int in, std::vector<Mat>& params) {
  const double a = std::sqrt(6.0 / static_cast<double>(in + out));
  Mat w(out, in);
  for (int r = 0; r < out; ++r)
    for (int c = 0; c < in; ++c) w(r, c) = rng.uniform(-a, a);
  Mat b(1, out);
  for (int c = 0; c < out; ++c) b(0, c) = rng.uniform(-a, a);
  params.push_back(std::move(w));
  params.push_back(std::move(b));
}

}  // namespace

WeightModel WeightModel::init(const ModelConfig& cfg) {
  if (cfg.hidden < 1 || cfg.blocks < 1 || cfg.mlp_layers < 1)
    throw std::invalid_argument("WeightModel::init: bad architecture sizes");
  WeightModel m;
  m.cfg_ = cfg;
  Rng rng(cfg.seed);
  const int h = cfg.hidden;
  if (cfg.arch == ModelConfig::Arch::Gin) {
    push_linear(rng, h, 5, m.params_);  // node encoder
    push_linear(rng, h, 1, m.params_);  // edge encoder
    for (int k = 0; k < cfg.blocks; ++k) {
      push_linear(rng, h, h, m.params_);
      push_linear(rng, h, h, m.params_);
    }
  } else {
    push_linear(rng, h, 5, m.params_);
    for (int l = 1; l < cfg.mlp_layers; ++l) push_linear(rng, h, h, m.params_);
  }
  push_linear(rng, 1, h, m.params_);  // head
  // Identity-start head: the clamped output 1 + max(pre, 0) has zero gradient
  // wherever pre < 0, and with a random head the pre-activations of all
  // subgraphs share one random offset, so entire runs can start with every
  // output clamped and every gradient exactly zero.  Zero weights plus a
  // small positive bias put every initial prediction just inside the active
  // region, near the all-ones baseline, with gradients guaranteed to flow.
  m.params_[m.params_.size() - 2].setZero();
  m.params_[m.params_.size() - 1].setConstant(0.1);
  return m;
}

int WeightModel::num_parameters() const {
  int total = 0;
  for (const Mat& p : params_) total += static_cast<int>(p.size());
  return total;
}

std::vector<ad::Var> WeightModel::register_params(ad::Tape& tape) const {
  std::vector<ad::Var> pv;
  pv.reserve(params_.size());
  for (int i = 0; i < static_cast<int>(params_.size()); ++i)
    pv.push_back(tape.param(params_[i], i));
  return pv;
}

ad::Var WeightModel::forward(ad::Tape& tape, const std::vector<ad::Var>& pv,
                             const SubgraphBatch& batch) const {
  if (pv.size() != params_.size())
    throw std::invalid_argument("WeightModel::forward: wrong parameter vars");
  ad::Var h;
  int slot = 0;
  if (cfg_.arch == ModelConfig::Arch::Gin) {
    ad::Var x = tape.constant(batch.node_features);
    ad::Var ein = tape.constant(batch.encoder_input);
    h = tape.affine(x, pv[0], pv[1]);
    ad::Var t = tape.spmm(&batch.incidence, tape.affine(ein, pv[2], pv[3]));
    slot = 4;
    for (int k = 0; k < cfg_.blocks; ++k) {
      ad::Var z = tape.add(tape.spmm(&batch.adj_self, h), t);
      ad::Var a1 = tape.relu(tape.affine(z, pv[slot], pv[slot + 1]));
      h = tape.relu(tape.affine(a1, pv[slot + 2], pv[slot + 3]));
      slot += 4;
    }
    h = tape.spmm(&batch.pool, h);
  } else {
    h = tape.spmm(&batch.pool, tape.constant(batch.node_features));
    for (int l = 0; l < cfg_.mlp_layers; ++l) {
      h = tape.relu(tape.affine(h, pv[slot], pv[slot + 1]));
      slot += 2;
    }
  }
  ad::Var z = tape.affine(h, pv[slot], pv[slot + 1]);
  return tape.add_scalar(tape.relu(z), 1.0);
}

Vec WeightModel::predict(const SubgraphBatch& batch) const {
  auto affine = [&](const Mat& x, int slot) -> Mat {
    return (x * params_[slot].transpose()).rowwise() + params_[slot + 1].row(0);
  };
  Mat h;
  int slot = 0;
  if (cfg_.arch == ModelConfig::Arch::Gin) {
    h = affine(batch.node_features, 0);
    Mat t = batch.incidence * affine(batch.encoder_input, 2);
    slot = 4;
    for (int k = 0; k < cfg_.blocks; ++k) {
      Mat z = (batch.adj_self * h) + t;
      Mat a1 = affine(z, slot).cwiseMax(0.0);
      h = affine(a1, slot + 2).cwiseMax(0.0);
      slot += 4;
    }
    h = batch.pool * h;
  } else {
    h = batch.pool * batch.node_features;
    for (int l = 0; l < cfg_.mlp_layers; ++l) {
      h = affine(h, slot).cwiseMax(0.0);
      slot += 2;
    }
  }
  Mat z = affine(h, slot);
  return (z.col(0).array().max(0.0) + 1.0).matrix();
}

Vec WeightModel::predict_all(const std::vector<EdgeSubgraph>& subs) const {
  if (subs.empty()) return Vec(0);
  return predict(make_batch(subs, 0, static_cast<int>(subs.size())));
}

}  // namespace coarsen
