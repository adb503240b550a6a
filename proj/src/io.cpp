#include "coarsen/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coarsen {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

WeightedGraph load_edge_list(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<WeightedGraph::Edge> edges;
  int n_declared = -1;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# n ", 0) == 0) {
      n_declared = std::atoi(line.c_str() + 4);
      continue;
    }
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) parse_fail(path, lineno, "expected 'u v [w]'");
    double w = 1.0;
    std::string wtok;
    if (ls >> wtok) {
      char* end = nullptr;
      w = std::strtod(wtok.c_str(), &end);
      if (end == wtok.c_str() || *end != '\0')
        parse_fail(path, lineno, "bad weight '" + wtok + "'");
    }
    std::string extra;
    if (ls >> extra) parse_fail(path, lineno, "trailing token '" + extra + "'");
    if (u < 0 || v < 0) parse_fail(path, lineno, "negative vertex id");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  const int n = n_declared >= 0 ? n_declared : max_id + 1;
  try {
    return WeightedGraph::build(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "# n " << g.n << "\n";
  for (const auto& e : g.edges)
    out << e.u << " " << e.v << " " << format_double(e.w) << "\n";
}

namespace {

WeightedGraph graph_from_json(const json& j, const std::string& path) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<WeightedGraph::Edge> edges;
    for (const auto& ej : j.at("edges")) {
      if (!ej.is_array() || (ej.size() != 2 && ej.size() != 3))
        throw std::runtime_error("edge entry must be [u, v] or [u, v, w]");
      WeightedGraph::Edge e;
      e.u = ej[0].get<int>();
      e.v = ej[1].get<int>();
      e.w = ej.size() == 3 ? ej[2].get<double>() : 1.0;
      edges.push_back(e);
    }
    Vec vw;
    if (j.contains("vertex_weights") && !j["vertex_weights"].is_null()) {
      const auto& vj = j["vertex_weights"];
      vw.resize(static_cast<Eigen::Index>(vj.size()));
      for (std::size_t i = 0; i < vj.size(); ++i)
        vw[static_cast<Eigen::Index>(i)] = vj[i].get<double>();
    }
    return WeightedGraph::build(n, std::move(edges), std::move(vw));
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

json graph_to_json(const WeightedGraph& g) {
  json j;
  j["n"] = g.n;
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back(json::array({e.u, e.v, e.w}));
  j["edges"] = std::move(edges);
  json vw = json::array();
  for (int i = 0; i < g.n; ++i) vw.push_back(g.vertex_weights[i]);
  j["vertex_weights"] = std::move(vw);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

}  // namespace

WeightedGraph load_graph_json(const std::string& path) {
  return graph_from_json(load_json_file(path), path);
}

void save_graph_json(const WeightedGraph& g, const std::string& path) {
  std::ofstream out = open_out(path);
  out << graph_to_json(g).dump(2) << "\n";
}

WeightedGraph load_graph_auto(const std::string& path) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
    return load_graph_json(path);
  return load_edge_list(path);
}

void save_coarsening_result(const CoarseningResult& r,
                            const std::string& path) {
  json j;
  j["algorithm"] = r.algorithm;
  j["ratio"] = r.ratio;
  j["n"] = r.partition.n;
  j["n_coarse"] = r.partition.n_coarse;
  j["assign"] = r.partition.assign;
  j["cluster_sizes"] = r.partition.cluster_sizes;
  j["clusters_connected"] = r.clusters_connected;
  j["coarse"] = graph_to_json(r.coarse);
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

CoarseningResult load_coarsening_result(const std::string& path,
                                        const WeightedGraph& original) {
  const json j = load_json_file(path);
  CoarseningResult r;
  try {
    r.algorithm = j.at("algorithm").get<std::string>();
    r.ratio = j.at("ratio").get<double>();
    r.partition = Partition::from_assignment(
        j.at("n_coarse").get<int>(), j.at("assign").get<std::vector<int>>());
    r.clusters_connected = j.at("clusters_connected").get<bool>();
    r.coarse = graph_from_json(j.at("coarse"), path);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (r.partition.n != original.n)
    throw std::runtime_error(path + ": assignment length " +
                             std::to_string(r.partition.n) +
                             " does not match graph size " +
                             std::to_string(original.n));
  r.original = original;
  return r;
}

}  // namespace coarsen
