#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "permsort/perm.hpp"

namespace permsort {

/// Simple undirected graph on vertices 0..n-1. Edges are kept as sorted,
/// de-duplicated (u, v) pairs with u < v.
class Graph {
public:
  explicit Graph(int vertices = 0) : n_(vertices) {}

  int vertex_count() const noexcept { return n_; }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Adds {u, v}; returns false if it was already present. Self-loops throw.
  bool add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  std::vector<std::vector<int>> adjacency() const;

  /// Optional integer drawing coordinates, one per vertex.
  std::vector<std::pair<int, int>> coords;

private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

/// Vertices are positions 1..n (stored as 0..n-1); edges join entries with
/// adjacent positions or adjacent values.
Graph adjacency_graph(const Perm& pi);

enum class VertexRole { Start, Terminal, Internal };
enum class EdgeRole { Horizontal, Vertical, Diagonal };

std::string_view to_string(VertexRole r);
std::string_view to_string(EdgeRole r);

struct SortingDiagram {
  int n = 0;
  std::vector<Perm> steps;  // (sigma^1, ..., sigma^t)
  Graph graph;
  std::vector<VertexRole> vertex_roles;
  std::vector<std::string> blocks;    // "D1", "S1", "D2", ... per vertex
  std::vector<EdgeRole> edge_roles;   // parallel to graph.edges()

  int t() const { return static_cast<int>(steps.size()); }
  /// sigma^t o ... o sigma^1
  Perm product() const;
};

/// Builds SD(sigma^1, ..., sigma^t). Vertex order: blocks D1, S1, D2, ...,
/// D_{t+1}, each holding its n points left to right. Throws SizeMismatch.
SortingDiagram build_sorting_diagram(const std::vector<Perm>& steps, int n);
SortingDiagram build_sorting_diagram(const std::vector<Perm>& steps);

/// Contracts every horizontal and vertical edge; the path starting at s_i
/// becomes vertex i-1.
Graph contract_to_adjacency(const SortingDiagram& sd);

long long straight_line_crossings(const SortingDiagram& sd);

inline constexpr int kTreewidthExactCap = 14;

/// Exact treewidth by dynamic programming over vertex subsets. Throws
/// LimitExceeded above `cap` vertices; the cap itself may be raised up to 24.
int treewidth_exact(const Graph& g, int cap = kTreewidthExactCap);

/// Best width over greedy min-fill and min-degree elimination orders.
int treewidth_upper(const Graph& g);

std::string export_dot(const Graph& g);
std::string export_dot(const SortingDiagram& sd);

nlohmann::json graph_to_json(const Graph& g);
nlohmann::json diagram_to_json(const SortingDiagram& sd);

}  // namespace permsort
