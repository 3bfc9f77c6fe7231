#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clem/gasket.hpp"
#include "clem/geometry.hpp"
#include "clem/rng.hpp"

namespace clem {

enum class FunctionalKind { neighborhood_area, eps_count };

/// Geodesic approximation functional l_eps on simple paths.
///   neighborhood_area: Lebesgue measure of the eps-neighbourhood
///   eps_count: largest N with t_1 < ... < t_N and |g(t_j) - g(t_{j-1})| >= eps
struct PathFunctional {
  FunctionalKind kind = FunctionalKind::eps_count;
  double eps = 1.0;

  static PathFunctional area(double eps) { return {FunctionalKind::neighborhood_area, eps}; }
  static PathFunctional count(double eps) { return {FunctionalKind::eps_count, eps}; }

  /// Value bound on single points and the cost of a sub-eps hop.
  double a_eps() const;
  /// Separation (in units of eps) needed for approximate additivity.
  double c_ser() const;
  const char* name() const;
};

/// Polygonal path. Construction rejects repeated consecutive vertices.
class PlanarPath {
 public:
  explicit PlanarPath(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  bool simple() const { return simple_; }
  double length() const { return cumulative_.back(); }
  /// Point at arc length s (clamped to [0, length]).
  Point2 at(double s) const;
  /// The initial piece of arc length s.
  PlanarPath prefix(double s) const;
  /// Points at every vertex and at every global arc-length multiple of pitch.
  std::vector<Point2> samples(double pitch, std::vector<double>* arclength = nullptr) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
  bool simple_ = true;
};

/// Grid pitch of the area rasterization, relative to eps.
inline constexpr double kAreaPitchFactor = 1.0 / 20.0;
/// Sampling pitch of continuous paths for eps_count, relative to eps.
inline constexpr double kCountPitchFactor = 1.0 / 20.0;

/// Value of f on a simple continuous path. Throws std::invalid_argument on
/// non-simple paths.
double evaluate(const PathFunctional& f, const PlanarPath& path);
/// Value of f on a lattice path given by its vertex sequence: eps_count
/// uses only the vertices as chain candidates.
double evaluate_lattice_path(const PathFunctional& f, std::span<const Point2> vertices);

/// Largest eps-separated chain among points taken in order.
int max_separated_chain(std::span<const Point2> points, double eps);

struct GeodesicValue {
  double value = 0.0;
  bool exact = true;      ///< false when the search budget ran out
  std::vector<int> path;  ///< minimizing path (gasket-local ids)
};

/// Minimum of f over simple lattice paths from x to y inside U. Branch and
/// bound over self-avoiding paths, pruning by monotonicity of f; when the
/// node budget runs out the best path found is returned with exact = false.
/// Disconnected endpoints give +infinity.
GeodesicValue approx_geodesic_metric(const GasketGraph& g, const Region& u, const PathFunctional& f, int x,
                                     int y, std::size_t node_budget = 200000);

/// Arc length s with |f(path[0,s]) - f(path)/2| <= a_eps.
double approximate_midpoint(const PathFunctional& f, const PlanarPath& path);

struct GoodSchemeReport {
  bool pass = true;
  std::size_t paths = 0;
  double bound = 0.0;      ///< 2 r eps (area) or r / eps (count)
  double min_value = 0.0;  ///< smallest functional value seen
};

/// Checks inf over paths with diameter >= r of f against its closed-form
/// lower bound on `samples` random simple polylines.
GoodSchemeReport good_scheme_check(const PathFunctional& f, double r, std::size_t samples = 1000,
                                   std::uint64_t seed = 1);

/// Random simple polyline with `segments` steps of unit length, built by
/// rejection of self-intersecting steps.
PlanarPath random_simple_polyline(CounterRng& rng, int segments);

double diameter(std::span<const Point2> points);

}  // namespace clem
