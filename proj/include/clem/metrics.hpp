#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clem/gasket.hpp"
#include "clem/path_functionals.hpp"

namespace clem {

/// Distance between vertices in different components.
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

enum class SchemeKind { chemical, resistance, geodesic_functional };

struct MetricScheme {
  SchemeKind kind = SchemeKind::chemical;
  PathFunctional functional{};  ///< used by geodesic_functional only

  static MetricScheme chemical() { return {SchemeKind::chemical, {}}; }
  static MetricScheme resistance() { return {SchemeKind::resistance, {}}; }
  static MetricScheme geodesic(PathFunctional f) { return {SchemeKind::geodesic_functional, f}; }

  /// Constant of the generalized parallel law for an N-point cut.
  double c_par(int n) const { return kind == SchemeKind::resistance ? static_cast<double>(n) : 1.0; }
  /// "chemical", "resistance", "area" or "count".
  std::string name() const;
  static MetricScheme parse(const std::string& name, double eps = 1.0);
};

double chemical_distance(const GasketGraph& g, const Region& u, int x, int y);
double effective_resistance(const GasketGraph& g, const Region& u, int x, int y);

/// Effective resistances between all pairs of `marked` vertices of a graph
/// with unit conductances (multi-edges add), row-major. Solves the
/// Laplacian grounded at one vertex per component: dense Cholesky up to
/// kDenseLimit vertices, Jacobi-preconditioned conjugate gradients above.
std::vector<double> resistance_table(const Graph& g, const std::vector<int>& marked);
/// Hop distances between all pairs of `marked` vertices, row-major.
std::vector<double> chemical_table(const Graph& g, const std::vector<int>& marked);

inline constexpr std::size_t kDenseLimit = 500;

/// Symmetric distance table over marked vertices of a region.
struct InternalMetric {
  Region region;
  MetricScheme scheme;
  std::vector<int> marked;     ///< gasket-local vertex ids
  std::vector<double> values;  ///< row-major |marked| x |marked|
  double normalizer = 1.0;
  bool exact = true;           ///< false if some geodesic value is only a bound

  std::size_t size() const { return marked.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i * marked.size() + j] / normalizer; }
  /// Distance between two marked gasket vertices.
  double between(int a, int b) const;
};

InternalMetric internal_metric(const GasketGraph& g, const Region& u, const MetricScheme& scheme,
                               const std::vector<int>& marked);

/// Distance of x and y under the scheme inside U.
double metric_distance(const GasketGraph& g, const Region& u, const MetricScheme& scheme, int x, int y);

/// Internal distances of x, y in V and in V' (V a subset of V').
std::pair<double, double> restrict_and_compare(const GasketGraph& g, const Region& v, const Region& v_prime,
                                               const MetricScheme& scheme, int x, int y);

/// Region over an explicit vertex list (sorted, deduplicated).
Region make_region(std::vector<int> vertices);

}  // namespace clem
