#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "clem/gasket.hpp"
#include "clem/metrics.hpp"

namespace clem {

/// Ball and annulus of the conditioning event, as fractions of n.
struct HarvestGeometry {
  double inner = 0.25;
  double annulus_lo = 0.5;
  double annulus_hi = 0.75;
};

/// One contact quadruple x', x, y, y' (in the order loop_a visits them)
/// with the region between the loops from x' to y'. The region is stored
/// as its own small gasket so instances outlive their configuration.
struct Quadruple {
  int x_prime = -1, x = -1, y = -1, y_prime = -1;  ///< vertices of the source gasket
  std::shared_ptr<const GasketGraph> region;       ///< induced gasket of U_{x',y'}
  int local_x = -1, local_y = -1;                  ///< x, y inside `region`
};

struct CrossingInstance {
  std::uint64_t config_seed = 0;
  std::size_t trial = 0;
  int loop_a = -1, loop_b = -1;
  std::vector<Quadruple> quadruples;
  double inner_scale = 0.0;  ///< radius of the inner ball (lattice units)
  double outer_scale = 0.0;  ///< outer radius of the annulus
};

/// Crossing instances of one decomposed configuration: hole loops of the
/// outermost cluster around the origin that touch each other both in the
/// annulus and in the inner ball.
std::vector<CrossingInstance> crossings_in(std::shared_ptr<const ClusterSet> clusters, int n,
                                           const HarvestGeometry& geometry = {});

/// Instances over `trials` sampled configurations; trial t uses seed
/// derive_seed(seed, "harvest", t).
std::vector<CrossingInstance> harvest_crossings(int n, double p, std::size_t trials, std::uint64_t seed,
                                                const HarvestGeometry& geometry = {}, unsigned threads = 0);

/// Largest d^{U_{x',y'}}(x, y) over the instance's quadruples.
double instance_value(const CrossingInstance& instance, const MetricScheme& scheme);

/// Type-7 quantile (linear interpolation of order statistics) of sorted data.
double quantile_type7(const std::vector<double>& sorted, double q);

inline constexpr double kQuantileLevels[] = {0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75, 0.8, 0.9};
inline constexpr std::size_t kBootstrapResamples = 1000;

struct NormalizationEstimate {
  std::string scheme;
  int n = 0;  ///< disk radius, when estimated from sampled configurations
  double eps = 1.0;
  std::size_t sample_count = 0;
  double median = 0.0;
  std::vector<double> levels;
  std::vector<double> quantiles;
  std::vector<double> ci_lo, ci_hi;  ///< bootstrap 95% intervals

  double quantile(double q) const;
};

/// Quantiles and bootstrap intervals of a value sample.
NormalizationEstimate estimate_from_values(std::vector<double> values, std::uint64_t seed = 1);
/// estimate_from_values over instance values. Throws on an empty list.
NormalizationEstimate estimate_m(const std::vector<CrossingInstance>& instances, const MetricScheme& scheme,
                                 double eps = 1.0, std::uint64_t seed = 1);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool pass = false;
};

/// Least-squares slope of log m against log(1/h). Lattice data enter with
/// h = 1/n (the mesh of a unit-size domain), so the slope is the exponent
/// m ~ n^slope. Verdict: slope inside [d_dbl - 0.3, d_SLE + 0.3] at kappa' = 6.
ScalingFit scaling_fit(const std::vector<double>& h, const std::vector<double>& m);

struct ComparabilityReport {
  std::vector<double> ratios;     ///< q(lo)/q(hi) per size
  double max_ratio = 0.0;
  double max_step_factor = 1.0;   ///< largest change between consecutive sizes
  bool pass = false;
};

ComparabilityReport quantile_comparability(const std::vector<NormalizationEstimate>& by_size, double q_lo = 0.25,
                                           double q_hi = 0.75);

struct ScalingStudy {
  std::vector<int> sizes;
  std::vector<std::size_t> instances;
  std::vector<NormalizationEstimate> estimates;
  ScalingFit fit;
  ComparabilityReport comparability;
};

ScalingStudy scaling_study(const MetricScheme& scheme, const std::vector<int>& sizes, std::size_t trials,
                           std::uint64_t seed, const HarvestGeometry& geometry = {}, unsigned threads = 0);

}  // namespace clem
