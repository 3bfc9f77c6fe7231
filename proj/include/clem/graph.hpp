#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "clem/geometry.hpp"

namespace clem {

/// Undirected multigraph with planar vertex positions. Parallel edges are
/// allowed (they matter for effective resistance); self-loops are not.
class Graph {
 public:
  struct Arc {
    int to;
    int edge;
  };

  Graph() = default;
  explicit Graph(std::vector<Point2> positions) : pos_(std::move(positions)), adj_(pos_.size()) {}

  int add_vertex(Point2 p = {});
  int add_edge(int u, int v);

  std::size_t size() const { return pos_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Arc> arcs(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(int v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  Point2 position(int v) const { return pos_[static_cast<std::size_t>(v)]; }
  std::pair<int, int> edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  bool adjacent(int u, int v) const;

 private:
  std::vector<Point2> pos_;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

/// Subgraph induced by a vertex subset, with index maps both ways.
struct InducedGraph {
  Graph graph;
  std::vector<int> to_parent;    ///< local -> parent vertex
  std::vector<int> from_parent;  ///< parent -> local, -1 if absent
};

InducedGraph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Marker for unreachable vertices in hop-distance vectors.
inline constexpr int kUnreachable = -1;

std::vector<int> bfs_distances(const Graph& g, int source);
/// Component label per vertex (labels 0..k-1 in order of first vertex).
std::vector<int> connected_components(const Graph& g);
/// Component labels after deleting the vertices flagged in `removed`
/// (removed vertices get label -1).
std::vector<int> components_without(const Graph& g, const std::vector<bool>& removed);

/// Articulation points (iterative Tarjan lowpoint).
std::vector<bool> articulation_points(const Graph& g);

/// Biconnected blocks as edge-id lists; a multigraph pair joined by two
/// parallel edges forms a two-edge block.
std::vector<std::vector<int>> biconnected_blocks(const Graph& g);

/// Maximum number of internally vertex-disjoint s-t paths (Menger), computed
/// by unit-capacity max-flow on the vertex-split graph. An s-t edge of
/// multiplicity m contributes m paths. Stops counting at `cap` when cap > 0.
int vertex_disjoint_paths(const Graph& g, int s, int t, int cap = 0);

/// A minimum s-t vertex separator (s, t non-adjacent); empty when s and t
/// are adjacent or coincide. The separator is read off the residual graph
/// of the max-flow, so |result| equals vertex_disjoint_paths(g, s, t).
std::vector<int> minimum_vertex_cut(const Graph& g, int s, int t);

}  // namespace clem
