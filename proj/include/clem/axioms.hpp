#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clem/gasket.hpp"
#include "clem/metrics.hpp"

namespace clem {

enum class Axiom { symmetry, triangle, separability, compatibility, monotonicity_i, monotonicity_ii, series, parallel };

inline constexpr Axiom kAllAxioms[] = {Axiom::symmetry,       Axiom::triangle,        Axiom::separability,
                                       Axiom::compatibility,  Axiom::monotonicity_i,  Axiom::monotonicity_ii,
                                       Axiom::series,         Axiom::parallel};

const char* axiom_name(Axiom a);

struct Violation {
  std::size_t instance = 0;
  std::vector<int> witness;  ///< gasket-local vertices (x, y, then separators)
  double lhs = 0.0;          ///< side that must dominate
  double rhs = 0.0;
  double slack = 0.0;        ///< lhs - rhs (negative on violation)
};

enum class Outcome { pass, fail, skip };

struct CheckResult {
  Outcome outcome = Outcome::skip;
  Violation detail;
};

struct AxiomReport {
  Axiom axiom = Axiom::symmetry;
  std::size_t instances_tested = 0;
  std::size_t skipped = 0;
  std::vector<Violation> violations;

  void add(const CheckResult& r, std::size_t instance);
  double skip_rate() const;
  /// No violations and not vacuous (skip rate at most kMaxSkipRate).
  bool pass() const;
};

inline constexpr double kMaxSkipRate = 0.9;

/// Absolute-plus-relative tolerance for comparing metric values.
inline constexpr double kAxiomTolerance = 1e-9;

/// Separation scale eps (lattice units) and series constant used for the
/// Euclidean preconditions of the axioms.
struct AxiomScale {
  double eps = 1.0;
  double c_ser = 1.0;
};

/// d(x,y) >= d(x,z1) + d(z2,y) when z1 separates x from {y,z2}, z2
/// separates y from {x,z1}, and the components K_x, K_y are at Euclidean
/// distance >= c_ser eps.
CheckResult check_series(const MetricScheme& scheme, const GasketGraph& g, const Region& u, int x, int y, int z1,
                         int z2, AxiomScale scale = {});

/// c_par(N) d^U(x,y) >= min_i d^{V_x}(x, z_i) when the cut separates x
/// from y and V_x contains the open c_ser eps-neighbourhood of K_x.
CheckResult check_parallel(const MetricScheme& scheme, const GasketGraph& g, const Region& u, int x, int y,
                           const std::vector<int>& cut, const Region& v_x, double c_par, AxiomScale scale = {});

struct CompatMonoResult {
  CheckResult compatibility, monotonicity_i, monotonicity_ii;
};

/// Compatibility and both monotonicity conditions for V inside V'.
CompatMonoResult check_compat_mono(const MetricScheme& scheme, const GasketGraph& g, const Region& v,
                                   const Region& v_prime, int x, int y, AxiomScale scale = {});

/// Decreasing chain of dead-end extensions V'_k of V: each d^{V'_k}(x,y)
/// must equal d^V(x,y).
CheckResult check_separability(const MetricScheme& scheme, const GasketGraph& g, const Region& v,
                               const Region& v_prime, int x, int y);

CheckResult check_symmetry(const InternalMetric& m);
CheckResult check_triangle(const InternalMetric& m);

/// Vertices lying on some simple x-y path in U (the block of U + xy that
/// contains the added edge).
std::vector<int> simple_path_vertices(const GasketGraph& g, const Region& u, int x, int y);

struct ShortcutParams {
  double eps = 1.0;
  double a_eps = 1.0;
  int max_chain = 6;
};

/// Shortcut metric between marked points i and j of a table: the cheapest
/// chain where a hop costs a_eps when its d_path is below eps and the base
/// distance otherwise. Dijkstra on the complete cost graph.
double shortcut_metric(const std::vector<double>& base, const std::vector<double>& d_path, std::size_t size,
                       const ShortcutParams& params, std::size_t i, std::size_t j);

struct HarnessConfig {
  MetricScheme scheme = MetricScheme::chemical();
  int n_max = 64;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Randomized run over sampled gaskets (largest cluster of a critical
/// configuration on a disk of radius <= n_max). Reports in kAllAxioms order.
std::vector<AxiomReport> run_axiom_harness(const HarnessConfig& config);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0, n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Chemical distance between two fixed points of a window, sampled in two
/// disjoint translated windows of the same configurations; the two samples
/// are compared by a KS test.
KsResult translation_invariance_test(int n, std::size_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace clem
