#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "clem/geometry.hpp"
#include "clem/lattice.hpp"

namespace clem {

/// Site configuration on a TriDisk. Sites outside the disk count as closed.
struct PercolationConfig {
  std::shared_ptr<const TriDisk> lattice;
  std::vector<std::uint8_t> open;  ///< one entry per site, 1 = open
  double p = 0.5;
  std::uint64_t seed = 0;

  int n() const { return lattice->radius(); }
  bool is_open(int site) const { return site >= 0 && open[static_cast<std::size_t>(site)] != 0; }

  /// Hand-built configuration with exactly the listed sites open.
  static PercolationConfig from_open_sites(int n, const std::vector<Axial>& sites);
};

/// Critical value of site percolation on the triangular lattice.
inline constexpr double kCriticalP = 0.5;

/// i.i.d. Bernoulli(p) sites; site i is open iff uniform01(seed, stream, i) < p.
PercolationConfig sample(int n, double p, std::uint64_t seed);

/// Opens every site with a neighbour outside the disk (wired boundary). The
/// boundary layer then forms one open cluster whose holes are the outermost
/// closed clusters of the interior.
void wire_boundary(PercolationConfig& config);

/// One edge of the honeycomb lattice separating open site `site` from its
/// closed neighbour in direction `dir`. Loops traverse it from corner dir-1
/// to corner dir, i.e. with the open site on the left.
struct DualEdge {
  int site = -1;
  int dir = 0;
  friend bool operator==(DualEdge, DualEdge) = default;
};

struct InterfaceLoop {
  int id = -1;
  int cluster = -1;       ///< open cluster on the loop's left
  bool exterior = false;  ///< outer boundary of its cluster (counterclockwise)
  std::vector<DualEdge> edges;
  std::vector<Point2> polygon;  ///< start point of each edge
  double area = 0.0;            ///< signed area of the polygon
};

struct ClusterSet {
  std::shared_ptr<const TriDisk> lattice;
  std::vector<int> labels;                 ///< site -> cluster id, -1 for closed sites
  std::vector<std::vector<int>> clusters;  ///< cluster id -> sites (ascending)
  std::vector<InterfaceLoop> loops;
  std::vector<std::vector<int>> cluster_loops;  ///< cluster id -> loop ids
  std::vector<int> exterior_loop;               ///< cluster id -> its exterior loop id
  std::vector<bool> outermost;  ///< cluster not enclosed by another open cluster

  std::size_t cluster_count() const { return clusters.size(); }
  /// Outermost cluster whose exterior loop winds around `p`, if any.
  std::optional<int> outermost_surrounding(Point2 p) const;
  /// Largest cluster by site count (ties: smallest id).
  std::optional<int> largest_cluster() const;
};

/// Cluster labels (ids ordered by smallest member site), interface loops
/// traced on the honeycomb lattice with the open side on the left, and
/// outermost flags.
ClusterSet decompose(const PercolationConfig& config);

/// Open left-right crossing of the n x n rhombus {0 <= q, r < n}.
bool rhombus_crossing(int n, double p, std::uint64_t seed);
/// Hop length of the shortest open left-right crossing of the rhombus, if any.
std::optional<int> shortest_crossing_length(int n, double p, std::uint64_t seed);

/// Fraction of `trials` rhombus samples with an open left-right crossing.
/// Trial t uses seed derive_seed(seed, "crossing", t).
double crossing_probability(int n, double p, int trials, std::uint64_t seed, unsigned threads = 0);

/// Number of times a closed polygon crosses the annulus A(center, inner, outer).
int annulus_crossings(const std::vector<Point2>& polygon, Point2 center, double inner, double outer);

/// Fraction of trials where some exterior cluster boundary crosses
/// A(0, inner, outer) at least four times.
double four_crossing_rate(int n, double p, double inner, double outer, int trials,
                          std::uint64_t seed, unsigned threads = 0);

}  // namespace clem
