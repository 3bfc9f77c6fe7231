#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "clem/graph.hpp"
#include "clem/percolation.hpp"

namespace clem {

/// Vertex subset of a gasket (local vertex ids, ascending) with the loops
/// that bound it and the vertices marked on those loops.
struct Region {
  std::vector<int> vertices;
  std::vector<int> loops;
  std::vector<int> marked;

  bool contains(int v) const;
  std::size_t size() const { return vertices.size(); }
};

/// Discrete gasket of one open cluster. Vertices are the cluster's sites
/// (local ids 0..size-1); the cluster's hole loops are the loops the
/// admissible paths may touch but not cross.
///
/// A vertex is thin when it has two internally vertex-disjoint paths to the
/// cluster's exterior boundary, modelled as an extra sink joined to every
/// vertex once per exterior-loop edge it carries.
struct GasketGraph {
  Graph graph;
  std::vector<int> sites;                         ///< local -> lattice site (-1 if synthetic)
  std::vector<int> boundary_multiplicity;         ///< exterior-boundary edges per vertex
  std::vector<bool> cut_vertices;
  std::vector<bool> thin;
  std::vector<std::vector<int>> loop_membership;  ///< local -> loop ids touching it
  std::shared_ptr<const ClusterSet> clusters;     ///< null for synthetic gaskets
  int cluster = -1;

  std::size_t size() const { return graph.size(); }
  /// Local id of a lattice site, -1 when the site is not in the gasket.
  int local(int site) const;
  /// Region covering every vertex.
  Region whole() const;

 private:
  friend GasketGraph build_gasket(std::shared_ptr<const ClusterSet>, int);
  std::vector<int> site_to_local_;
};

GasketGraph build_gasket(std::shared_ptr<const ClusterSet> clusters, int cluster_id);
/// Gasket over an arbitrary graph (test fixtures); boundary_multiplicity
/// plays the role of the exterior-boundary edge counts.
GasketGraph gasket_from_graph(Graph graph, std::vector<int> boundary_multiplicity);

/// Thin flags via biconnected blocks of the graph plus boundary sink.
std::vector<bool> thin_flags_by_blocks(const Graph& g, const std::vector<int>& boundary_multiplicity);
/// Thin flags via two vertex-disjoint path searches (max-flow).
std::vector<bool> thin_flags_by_flow(const Graph& g, const std::vector<int>& boundary_multiplicity);

/// Admissible adjacency restricted to U.
InducedGraph admissible_distance_graph(const GasketGraph& g, const Region& u);

/// Vertices of both loops, in the order loop_a visits them.
std::vector<int> contact_vertices(const GasketGraph& g, int loop_a, int loop_b);

/// Which loop arcs region_between may use.
enum class ArcOrder {
  as_given,  ///< loop_a from x to y, loop_b from y back to x
  either,    ///< also the arcs with x and y exchanged
};

/// The part of the gasket enclosed between the arc of loop_a from x to y
/// and the arc of loop_b from y back to x, together with x and y.
/// Throws std::invalid_argument when x or y is not a contact vertex and
/// std::runtime_error when no pair of arcs bounds a region.
Region region_between(const GasketGraph& g, int loop_a, int loop_b, int x, int y,
                      ArcOrder order = ArcOrder::either);

/// Marker for "no finite separating set" (x adjacent to y).
inline constexpr int kUnboundedCut = std::numeric_limits<int>::max();

struct Separation {
  std::vector<int> cut;  ///< local vertex ids of one minimum x-y vertex cut
  int size = 0;          ///< |cut|, or kUnboundedCut when x ~ y
};

Separation separation_points(const GasketGraph& g, const Region& u, int x, int y);

}  // namespace clem
