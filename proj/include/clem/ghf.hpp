#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clem/geometry.hpp"

namespace clem {

/// Metric on the function target space Y; defaults to |a - b| on the line.
using ValueMetric = std::function<double(double, double)>;
double line_metric(double a, double b);

/// Finite metric space with a function on a marked subset.
struct MarkedMetricSpace {
  std::size_t size = 0;
  std::vector<double> dist;     ///< row-major size x size
  std::vector<int> marked;      ///< K
  std::vector<double> values;   ///< f on K, aligned with `marked`
  std::vector<Point2> embedding;  ///< optional planar coordinates

  /// Validates symmetry, zero diagonal, nonnegativity and the triangle
  /// inequality (tolerance 1e-9); throws std::invalid_argument otherwise.
  static MarkedMetricSpace make(std::size_t size, std::vector<double> dist, std::vector<int> marked = {},
                                std::vector<double> values = {});
  /// Points of a finite set of reals with |a - b| distances.
  static MarkedMetricSpace on_line(const std::vector<double>& points, std::vector<int> marked = {},
                                   std::vector<double> values = {});

  double d(std::size_t i, std::size_t j) const { return dist[i * size + j]; }
  double diameter() const;
};

/// d_inf between (K1, f1) and (K2, f2) inside a common space W (row-major
/// distances of w_size points): the least delta such that every marked
/// point of either side has a partner of the other side within delta whose
/// value is within delta. Both sides empty give 0; one side empty gives
/// +infinity.
double d_infty(const std::vector<double>& w_dist, std::size_t w_size, const std::vector<int>& k1,
               const std::vector<double>& f1, const std::vector<int>& k2, const std::vector<double>& f2,
               const ValueMetric& dy = line_metric);

/// A correspondence as a list of (i in A, j in B) pairs.
using Correspondence = std::vector<std::pair<int, int>>;

double distortion(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r);

/// Largest value mismatch of the marks across R: every marked point needs a
/// marked partner related to it by R, and the cost is the worst best-partner
/// value distance. No marks on either side give 0; marks on one side only,
/// or a marked point without a marked partner, give +infinity.
double mark_mismatch(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r,
                     const ValueMetric& dy = line_metric);

/// Value of a correspondence: dis(R)/2 + mark_mismatch(R). Composition of
/// correspondences adds both terms at most, so the minimum over R is a
/// pseudo-metric. Gluing A and B along R at distance dis(R)/2 realizes
/// Hausdorff distance dis(R)/2 and d_inf at most this value, so it bounds
/// the infimum over common embeddings from above.
double correspondence_value(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r,
                            const ValueMetric& dy = line_metric);

/// Row-major distances of A and B glued along R at distance dis(R)/2
/// (A's points first).
std::vector<double> glued_metric(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r);

inline constexpr std::size_t kExactGhfLimit = 10;

/// GHf distance in the correspondence convention: the minimum of
/// correspondence_value over all correspondences. Adding pairs never raises
/// the mismatch, so for a fixed distortion threshold only maximal compatible
/// pair sets need to be considered and
/// the search enumerates maximal cliques of the pair-compatibility graph
/// (Bron-Kerbosch) for each candidate threshold. Requires
/// |A| + |B| <= kExactGhfLimit; throws std::length_error otherwise.
double ghf_distance_exact(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const ValueMetric& dy = line_metric);

struct GhfBounds {
  double lower = 0.0;  ///< |diam A - diam B|/2 + Hausdorff distance of the value sets
  double upper = 0.0;  ///< best correspondence found by profile matching and local search
};

GhfBounds ghf_distance_bounds(const MarkedMetricSpace& a, const MarkedMetricSpace& b,
                              const ValueMetric& dy = line_metric);

struct HoelderParams {
  double alpha = 1.0;
  double C = 1.0;
  double r = 0.0;
};

struct HoelderVerdict {
  bool value_bound = true;  ///< sup |f| <= C (distance to 0 in Y)
  bool increments = true;   ///< d_Y(f(x), f(y)) <= C (d(x,y) v r)^alpha on marked pairs
  bool member() const { return value_bound && increments; }
};

HoelderVerdict hoelder_membership(const MarkedMetricSpace& a, const HoelderParams& params,
                                  const ValueMetric& dy = line_metric, double origin = 0.0);

struct ConvergenceProbe {
  std::size_t count = 0;
  std::vector<double> pairwise;   ///< row-major d_GHf (exact value or upper bound)
  std::vector<bool> exact;        ///< per entry: exact evaluation
  std::vector<double> tail_sup;   ///< tail_sup[k] = max over i, j >= k
  bool cauchy = false;            ///< last tail at most half the first (or all zero)
};

ConvergenceProbe sequence_convergence_probe(const std::vector<MarkedMetricSpace>& spaces,
                                            const ValueMetric& dy = line_metric);

}  // namespace clem
