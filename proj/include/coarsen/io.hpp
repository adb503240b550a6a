#pragma once

#include <string>

#include "coarsen/graph.hpp"

namespace coarsen {

/// Shortest decimal form of x that parses back to exactly the same double
/// (17 significant digits are used whenever needed).
std::string format_double(double x);

/// Plain-text edge list: one edge per line as "u v" or "u v w" (missing
/// weight reads as 1.0), '#' starts a comment, blank lines are skipped.
/// Vertex count is 1 + max id unless a leading "# n <count>" header is
/// present (written by save_edge_list so isolated trailing vertices survive
/// a round trip). Parse errors report the offending line number.
WeightedGraph load_edge_list(const std::string& path);
void save_edge_list(const WeightedGraph& g, const std::string& path);

/// JSON bundle {"n": int, "edges": [[u, v, w], ...], "vertex_weights":
/// [...]}. Doubles are serialized with round-trip precision, so
/// save -> load -> save is byte-identical.
WeightedGraph load_graph_json(const std::string& path);
void save_graph_json(const WeightedGraph& g, const std::string& path);

/// Loads either format, keyed on the file extension (".json" vs anything
/// else).
WeightedGraph load_graph_auto(const std::string& path);

/// Coarsening result bundle: algorithm, achieved ratio, the partition
/// (assignment + cluster sizes), connectivity flag, and the coarse graph.
/// The original graph is not embedded; the loader re-attaches it and
/// validates that the assignment length matches.
void save_coarsening_result(const CoarseningResult& r, const std::string& path);
CoarseningResult load_coarsening_result(const std::string& path,
                                        const WeightedGraph& original);

}  // namespace coarsen
