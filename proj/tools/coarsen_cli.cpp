// Command-line front end: generation, coarsening, loss evaluation, spectral
// weight optimization, model training, and grid sweeps, with deterministic
// file outputs under fixed seeds.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <coarsen/coarsening.hpp>
#include <coarsen/datagen.hpp>
#include <coarsen/gnn.hpp>
#include <coarsen/graph.hpp>
#include <coarsen/io.hpp>
#include <coarsen/losses.hpp>
#include <coarsen/operators.hpp>
#include <coarsen/rng.hpp>
#include <coarsen/spectral.hpp>
#include <coarsen/train.hpp>
#include <coarsen/weight_opt.hpp>

namespace {

using namespace coarsen;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void save_graph_auto(const WeightedGraph& g, const std::string& path) {
  if (ends_with(path, ".json"))
    save_graph_json(g, path);
  else
    save_edge_list(g, path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

OperatorKind parse_operator(const std::string& name) {
  if (name == "combinatorial") return OperatorKind::Combinatorial;
  if (name == "normalized") return OperatorKind::Normalized;
  if (name == "doubly") return OperatorKind::DoublyWeighted;
  throw std::invalid_argument("unknown operator: " + name);
}

Vec induced_weights(const CoarseningResult& r) {
  Vec w(r.coarse.edges.size());
  for (int e = 0; e < static_cast<int>(r.coarse.edges.size()); ++e)
    w(e) = r.coarse.edges[e].w;
  return w;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string model = "er";
  int n = 512;
  std::uint64_t seed = 0;
  std::string out;
  GeneratorParams params;
};

void add_generator_params(CLI::App* cmd, GeneratorParams& p) {
  cmd->add_option("--er-p", p.er_p, "Edge probability (<=0: 0.1*512/n)");
  cmd->add_option("--ba-m", p.ba_m, "Edges attached per new node");
  cmd->add_option("--ws-k", p.ws_k, "Ring-lattice degree (even)");
  cmd->add_option("--ws-p", p.ws_p, "Rewiring probability");
  cmd->add_option("--geo-r", p.geo_r, "Connection radius (<=0: 5.12/sqrt(n))");
  cmd->add_option("--geo-dim", p.geo_dim, "Embedding dimension");
}

int run_generate(const GenerateArgs& a) {
  const WeightedGraph g =
      generate(parse_graph_model(a.model), a.n, a.seed, a.params);
  save_graph_auto(g, a.out);
  std::cout << "model=" << a.model << " n=" << g.n << " m=" << g.num_edges()
            << "\n";
  return 0;
}

// ----------------------------------------------------------------- coarsen

struct CoarsenArgs {
  std::string graph;
  std::string alg = "heavy_edge";
  double ratio = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_coarsen(const CoarsenArgs& a) {
  const WeightedGraph g = load_graph_auto(a.graph);
  CoarseningConfig cfg;
  cfg.algorithm = parse_algorithm(a.alg);
  cfg.ratio = a.ratio;
  cfg.seed = a.seed;
  const CoarseningResult r = coarsen::coarsen(g, cfg);
  save_coarsening_result(r, a.out);
  std::cout << a.alg << "," << format_double(a.ratio) << "," << g.n << ","
            << r.partition.n_coarse << "\n";
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string graph;
  std::string result;
  std::string loss = "quad";
  int k = 40;
  std::uint64_t seed = 0;
  std::string after;  // checkpoint; predictions replace the coarse weights
  bool crossing_one = false;
  std::string out;
};

int run_evaluate(const EvaluateArgs& a) {
  const WeightedGraph g = load_graph_auto(a.graph);
  const CoarseningResult r = load_coarsening_result(a.result, g);
  LossSpec spec;
  spec.kind = parse_loss(a.loss);
  spec.k = a.k;
  spec.seed = a.seed;
  const TestVectors tv = make_test_vectors(g, spec);
  const LossPlan plan = LossPlan::build(g, r, spec, tv);
  const double before = plan.value(induced_weights(r));
  double after = before;
  if (!a.after.empty()) {
    const WeightModel model = load_checkpoint(a.after);
    const auto subs = extract_edge_subgraphs(g, r, a.crossing_one);
    after = plan.value(model.predict_all(subs));
  }
  const double pct = before != 0.0 ? (before - after) / before * 100.0 : 0.0;
  std::ostringstream csv;
  csv << "loss,k,seed,loss_before,loss_after,improvement_pct\n"
      << a.loss << "," << a.k << "," << a.seed << "," << format_double(before)
      << "," << format_double(after) << "," << format_double(pct) << "\n";
  if (a.out.empty())
    std::cout << csv.str();
  else {
    write_text_file(a.out, csv.str());
    std::cout << format_double(before) << "," << format_double(after) << ","
              << format_double(pct) << "\n";
  }
  return 0;
}

// --------------------------------------------------------- optimize-weights

struct OptimizeArgs {
  std::string graph;        // topology whose weights are optimized
  std::string target_eigs;  // file: one ascending eigenvalue per line
  std::string target_from;  // graph whose leading spectrum is the target
  std::string out;
  std::string trace;
  double tol = 1e-9;
  int max_iter = 5000;
};

int run_optimize(const OptimizeArgs& a) {
  const WeightedGraph g = load_graph_auto(a.graph);
  Vec targets;
  if (!a.target_eigs.empty()) {
    std::ifstream in(a.target_eigs);
    if (!in) throw std::runtime_error("cannot read targets: " + a.target_eigs);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      vals.push_back(std::stod(line));
    }
    targets = Eigen::Map<Vec>(vals.data(), vals.size());
  } else if (!a.target_from.empty()) {
    const WeightedGraph big = load_graph_auto(a.target_from);
    targets = eigen_smallest_k(laplacian(big, OperatorKind::Combinatorial), g.n)
                  .eigenvalues;
  } else {
    throw std::invalid_argument(
        "optimize-weights: need --target-eigs or --target-from");
  }
  if (tree_feasibility_check(g, targets) == TreeFeasibility::ProvablyInfeasible)
    std::cerr << "warning: tree topology cannot realize this many distinct "
                 "eigenvalues; optimizing anyway\n";
  const MMResult r = mm_optimize(g, targets, a.tol, a.max_iter);
  if (!a.out.empty()) save_graph_json(r.graph, a.out);
  if (!a.trace.empty()) {
    std::ostringstream csv;
    csv << "iteration,objective\n";
    for (int i = 0; i < static_cast<int>(r.objective_trace.size()); ++i)
      csv << i << "," << format_double(r.objective_trace[i]) << "\n";
    write_text_file(a.trace, csv.str());
  }
  std::cout << "iterations=" << r.iterations << " converged=" << r.converged
            << " objective=" << format_double(r.objective_trace.back()) << "\n";
  return 0;
}

// ------------------------------------------------------------------- train

struct TrainArgs {
  std::string graphs;      // comma-separated training graph files
  std::string val_graphs;  // comma-separated validation graph files
  std::string split_model;  // alternatively: synthetic 5/5 ladder split
  std::uint64_t split_seed = 0;
  std::string alg = "bl";
  double ratio = 0.5;
  std::string loss = "quad";
  int k = 40;
  std::string arch = "gin";
  int epochs = 50;
  double lr = 1e-3;
  int batch = 600;
  std::uint64_t seed = 0;
  bool crossing_one = false;
  std::string checkpoint;
  std::string history;
};

TrainConfig make_train_config(const std::string& alg, double ratio,
                              const std::string& loss, int k,
                              const std::string& arch, int epochs, double lr,
                              int batch, bool crossing_one,
                              std::uint64_t seed) {
  TrainConfig cfg;
  cfg.coarsen.algorithm = parse_algorithm(alg);
  cfg.coarsen.ratio = ratio;
  cfg.loss.kind = parse_loss(loss);
  cfg.loss.k = k;
  cfg.model.arch = parse_arch(arch);
  cfg.epochs = epochs;
  cfg.lr = lr;
  cfg.batch = batch;
  cfg.crossing_feature_one = crossing_one;
  seed_all(cfg, seed);
  return cfg;
}

int run_train(const TrainArgs& a) {
  std::vector<WeightedGraph> train_graphs, val_graphs;
  if (!a.split_model.empty()) {
    ExperimentSplit split =
        experiment_split(parse_graph_model(a.split_model), a.split_seed);
    train_graphs = std::move(split.train);
    val_graphs = std::move(split.val);
  } else {
    for (const std::string& p : split_list(a.graphs))
      train_graphs.push_back(load_graph_auto(p));
    for (const std::string& p : split_list(a.val_graphs))
      val_graphs.push_back(load_graph_auto(p));
  }
  if (train_graphs.empty())
    throw std::invalid_argument("train: need --graphs or --split-model");
  const TrainConfig cfg =
      make_train_config(a.alg, a.ratio, a.loss, a.k, a.arch, a.epochs, a.lr,
                        a.batch, a.crossing_one, a.seed);
  const TrainResult r = train(train_graphs, val_graphs, cfg);
  if (!a.checkpoint.empty()) save_checkpoint(r.model, a.checkpoint);
  if (!a.history.empty()) {
    std::ostringstream csv;
    csv << "graph,epoch,train_loss,val_loss\n";
    for (const EpochStats& e : r.history)
      csv << e.graph << "," << e.epoch << "," << format_double(e.train_loss)
          << "," << format_double(e.val_loss) << "\n";
    write_text_file(a.history, csv.str());
  }
  std::cout << "best_val=" << format_double(r.best_val)
            << " diverged=" << r.diverged << " epochs=" << r.history.size()
            << "\n";
  return 0;
}

// ------------------------------------------------------------------- apply

struct ApplyArgs {
  std::string graph;
  std::string checkpoint;
  std::string alg = "bl";
  double ratio = 0.5;
  std::string loss = "quad";
  int k = 40;
  std::uint64_t seed = 0;
  bool crossing_one = false;
  std::string out;  // reweighted coarsening result JSON
  std::string csv;
};

int run_apply(const ApplyArgs& a) {
  const WeightedGraph g = load_graph_auto(a.graph);
  const WeightModel model = load_checkpoint(a.checkpoint);
  const TrainConfig cfg = make_train_config(
      a.alg, a.ratio, a.loss, a.k, "gin", 1, 1e-3, 600, a.crossing_one, a.seed);
  const ApplyResult r = apply_model(model, g, cfg);
  if (!a.out.empty()) save_coarsening_result(r.result, a.out);
  std::ostringstream row;
  row << a.loss << "," << a.k << "," << a.seed << ","
      << format_double(r.loss_before) << "," << format_double(r.loss_after)
      << "," << format_double(r.improvement_pct) << "\n";
  if (!a.csv.empty())
    write_text_file(
        a.csv, "loss,k,seed,loss_before,loss_after,improvement_pct\n" + row.str());
  std::cout << row.str();
  return 0;
}

// -------------------------------------------------------------------- eigs

struct EigsArgs {
  std::string graph;
  int k = 40;
  std::string op = "combinatorial";
  bool force_lanczos = false;
  std::string out;
};

int run_eigs(const EigsArgs& a) {
  const WeightedGraph g = load_graph_auto(a.graph);
  EigOptions opts;
  opts.force_lanczos = a.force_lanczos;
  const Spectrum s =
      eigen_smallest_k(laplacian(g, parse_operator(a.op)), a.k, opts);
  std::ostringstream csv;
  csv << "index,eigenvalue\n";
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    csv << i << "," << format_double(s.eigenvalues(i)) << "\n";
  if (a.out.empty())
    std::cout << csv.str();
  else
    write_text_file(a.out, csv.str());
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepConfig {
  std::string model = "ws";
  std::vector<int> sizes;
  std::vector<std::string> algs;
  std::vector<double> ratios;
  std::vector<std::string> losses;
  std::vector<std::uint64_t> seeds;
  int k = 40;
};

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "model")
      cfg.model = value;
    else if (key == "sizes")
      for (const auto& v : split_list(value)) cfg.sizes.push_back(std::stoi(v));
    else if (key == "algs")
      cfg.algs = split_list(value);
    else if (key == "ratios")
      for (const auto& v : split_list(value)) cfg.ratios.push_back(std::stod(v));
    else if (key == "losses")
      cfg.losses = split_list(value);
    else if (key == "seeds")
      for (const auto& v : split_list(value))
        cfg.seeds.push_back(std::stoull(v));
    else if (key == "k")
      cfg.k = std::stoi(value);
    else
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown key: " + key);
  }
  if (cfg.sizes.empty() || cfg.algs.empty() || cfg.ratios.empty() ||
      cfg.losses.empty() || cfg.seeds.empty())
    throw std::runtime_error(
        "sweep config needs sizes, algs, ratios, losses, seeds");
  return cfg;
}

struct SweepCell {
  int size = 0;
  std::string alg;
  double ratio = 0.0;
  std::string loss;
  std::uint64_t seed = 0;
  std::string key;  // joins every coordinate; doubles via format_double
};

std::string sweep_row(const SweepConfig& cfg, const SweepCell& c) {
  const WeightedGraph g =
      generate(parse_graph_model(cfg.model), c.size, c.seed);
  CoarseningConfig ccfg;
  ccfg.algorithm = parse_algorithm(c.alg);
  ccfg.ratio = c.ratio;
  ccfg.seed = c.seed;
  const CoarseningResult r = coarsen::coarsen(g, ccfg);
  LossSpec spec;
  spec.kind = parse_loss(c.loss);
  spec.k = cfg.k;
  spec.seed = c.seed;
  const TestVectors tv = make_test_vectors(g, spec);
  const double value =
      LossPlan::build(g, r, spec, tv).value(induced_weights(r));
  std::ostringstream row;
  row << c.key << "," << g.n << "," << r.partition.n_coarse << "," << cfg.k
      << "," << format_double(value);
  return row.str();
}

int sweep_thread_count(int cells) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (const char* env = std::getenv("COARSEN_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, cap);
  }
  return std::min(threads, std::max(cells, 1));
}

int run_sweep(const std::string& config_path, const std::string& out_path) {
  const SweepConfig cfg = parse_sweep_config(config_path);
  std::vector<SweepCell> cells;
  for (int size : cfg.sizes)
    for (const std::string& alg : cfg.algs)
      for (double ratio : cfg.ratios)
        for (const std::string& loss : cfg.losses)
          for (std::uint64_t seed : cfg.seeds) {
            SweepCell c{size, alg, ratio, loss, seed, ""};
            std::ostringstream key;
            key << cfg.model << "," << size << "," << alg << ","
                << format_double(ratio) << "," << loss << "," << seed;
            c.key = key.str();
            cells.push_back(std::move(c));
          }

  const std::string header = "model,n,alg,ratio,loss,seed,n_kept,n_coarse,k,value";
  // A row's key is its first six columns; previously completed rows are
  // reused so an interrupted sweep resumes instead of recomputing.
  std::map<std::string, std::string> done;
  {
    std::ifstream in(out_path);
    std::string line;
    bool first = true;
    while (in && std::getline(in, line)) {
      if (first || line.empty()) {
        first = false;
        continue;
      }
      size_t pos = 0;
      for (int comma = 0; comma < 6 && pos != std::string::npos; ++comma)
        pos = line.find(',', pos == 0 && comma == 0 ? 0 : pos + 1);
      if (pos == std::string::npos) continue;
      done.emplace(line.substr(0, pos), line);
    }
  }

  std::vector<int> missing;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (done.find(cells[i].key) == done.end()) missing.push_back(i);

  std::vector<std::string> fresh(cells.size());
  if (!missing.empty()) {
    std::ofstream append(out_path, std::ios::app);
    if (!append) throw std::runtime_error("cannot write file: " + out_path);
    std::mutex mu;
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    auto worker = [&]() {
      while (!failed.load()) {
        const size_t j = next.fetch_add(1);
        if (j >= missing.size()) break;
        const int i = missing[j];
        try {
          const std::string row = sweep_row(cfg, cells[i]);
          std::lock_guard<std::mutex> lock(mu);
          fresh[i] = row;
          append << row << "\n" << std::flush;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failed.exchange(true)) first_error = e.what();
        }
      }
    };
    const int nthreads = sweep_thread_count(static_cast<int>(missing.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("sweep cell failed: " + first_error);
  }

  // Everything finished: rewrite in canonical cell order so complete runs
  // are byte-identical no matter how they were interrupted.
  std::ostringstream final_csv;
  final_csv << header << "\n";
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    const auto it = done.find(cells[i].key);
    final_csv << (it != done.end() ? it->second : fresh[i]) << "\n";
  }
  write_text_file(out_path, final_csv.str());
  std::cout << "cells=" << cells.size() << " computed=" << missing.size()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph coarsening toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* c_gen = app.add_subcommand("generate", "Generate a synthetic graph");
  c_gen->add_option("--model", gen.model, "er|ba|ws|geo")->required();
  c_gen->add_option("--n", gen.n, "Vertex count before trimming")->required();
  c_gen->add_option("--seed", gen.seed, "Random seed");
  c_gen->add_option("--out", gen.out, "Output path (.json or edge list)")
      ->required();
  add_generator_params(c_gen, gen.params);

  CoarsenArgs co;
  CLI::App* c_co = app.add_subcommand("coarsen", "Coarsen a graph");
  c_co->add_option("--graph", co.graph, "Input graph")->required();
  c_co->add_option("--alg", co.alg,
                   "bl|heavy_edge|alg_dist|affinity|lv_edge|lv_neigh");
  c_co->add_option("--ratio", co.ratio, "Reduction ratio in [0,1)");
  c_co->add_option("--seed", co.seed, "Random seed");
  c_co->add_option("--out", co.out, "Coarsening result JSON")->required();

  EvaluateArgs ev;
  CLI::App* c_ev = app.add_subcommand("evaluate", "Loss of a coarsening");
  c_ev->add_option("--graph", ev.graph, "Original graph")->required();
  c_ev->add_option("--result", ev.result, "Coarsening result JSON")->required();
  c_ev->add_option("--loss", ev.loss,
                   "quad|quad_norm|rayleigh|conductance|eigenerror");
  c_ev->add_option("--k", ev.k, "Test vector / eigenvalue count");
  c_ev->add_option("--seed", ev.seed, "Sampling seed");
  c_ev->add_option("--after", ev.after,
                   "Checkpoint whose predictions give loss_after");
  c_ev->add_flag("--crossing-one", ev.crossing_one,
                 "Feed crossing edges feature 1.0");
  c_ev->add_option("--out", ev.out, "CSV output path");

  OptimizeArgs op;
  CLI::App* c_op = app.add_subcommand(
      "optimize-weights", "Align a topology's spectrum with a target");
  c_op->add_option("--graph", op.graph, "Graph to reweight")->required();
  c_op->add_option("--target-eigs", op.target_eigs,
                   "File of ascending eigenvalues, one per line");
  c_op->add_option("--target-from", op.target_from,
                   "Graph whose leading spectrum is the target");
  c_op->add_option("--out", op.out, "Optimized graph JSON");
  c_op->add_option("--trace", op.trace, "Objective trace CSV");
  c_op->add_option("--tol", op.tol, "Relative decrease stop threshold");
  c_op->add_option("--max-iter", op.max_iter, "Iteration cap");

  TrainArgs tr;
  CLI::App* c_tr = app.add_subcommand("train", "Train a weight model");
  c_tr->add_option("--graphs", tr.graphs, "Training graphs, comma separated");
  c_tr->add_option("--val-graphs", tr.val_graphs,
                   "Validation graphs, comma separated");
  c_tr->add_option("--split-model", tr.split_model,
                   "Generate the 5/5 synthetic ladder split (er|ba|ws|geo)");
  c_tr->add_option("--split-seed", tr.split_seed, "Ladder split seed");
  c_tr->add_option("--alg", tr.alg, "Coarsening algorithm");
  c_tr->add_option("--ratio", tr.ratio, "Reduction ratio");
  c_tr->add_option("--loss", tr.loss, "Training loss");
  c_tr->add_option("--k", tr.k, "Test vector count");
  c_tr->add_option("--arch", tr.arch, "gin|mlp");
  c_tr->add_option("--epochs", tr.epochs, "Epochs per graph");
  c_tr->add_option("--lr", tr.lr, "Learning rate");
  c_tr->add_option("--batch", tr.batch, "Max subgraphs per step");
  c_tr->add_option("--seed", tr.seed, "Master seed");
  c_tr->add_flag("--crossing-one", tr.crossing_one,
                 "Feed crossing edges feature 1.0");
  c_tr->add_option("--checkpoint", tr.checkpoint, "Checkpoint output JSON");
  c_tr->add_option("--history", tr.history, "Loss history CSV");

  ApplyArgs ap;
  CLI::App* c_ap = app.add_subcommand("apply", "Re-weight a coarsening");
  c_ap->add_option("--graph", ap.graph, "Input graph")->required();
  c_ap->add_option("--checkpoint", ap.checkpoint, "Model checkpoint")
      ->required();
  c_ap->add_option("--alg", ap.alg, "Coarsening algorithm");
  c_ap->add_option("--ratio", ap.ratio, "Reduction ratio");
  c_ap->add_option("--loss", ap.loss, "Evaluation loss");
  c_ap->add_option("--k", ap.k, "Test vector count");
  c_ap->add_option("--seed", ap.seed, "Seed");
  c_ap->add_flag("--crossing-one", ap.crossing_one,
                 "Feed crossing edges feature 1.0");
  c_ap->add_option("--out", ap.out, "Re-weighted result JSON");
  c_ap->add_option("--csv", ap.csv, "CSV output path");

  EigsArgs ei;
  CLI::App* c_ei = app.add_subcommand("eigs", "Smallest Laplacian eigenvalues");
  c_ei->add_option("--graph", ei.graph, "Input graph")->required();
  c_ei->add_option("--k", ei.k, "Eigenvalue count");
  c_ei->add_option("--operator", ei.op, "combinatorial|normalized|doubly");
  c_ei->add_flag("--force-lanczos", ei.force_lanczos,
                 "Use the iterative path at any size");
  c_ei->add_option("--out", ei.out, "CSV output path");

  std::string sweep_config, sweep_out;
  CLI::App* c_sw = app.add_subcommand("sweep", "Evaluate a parameter grid");
  c_sw->add_option("--config", sweep_config, "key=value grid file")->required();
  c_sw->add_option("--out", sweep_out, "Results CSV (resumable)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_gen->parsed()) return run_generate(gen);
    if (c_co->parsed()) return run_coarsen(co);
    if (c_ev->parsed()) return run_evaluate(ev);
    if (c_op->parsed()) return run_optimize(op);
    if (c_tr->parsed()) return run_train(tr);
    if (c_ap->parsed()) return run_apply(ap);
    if (c_ei->parsed()) return run_eigs(ei);
    if (c_sw->parsed()) return run_sweep(sweep_config, sweep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
