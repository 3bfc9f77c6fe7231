#include "clem/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clem/exponents.hpp"
#include "clem/parallel.hpp"
#include "clem/percolation.hpp"
#include "clem/rng.hpp"

namespace clem {

namespace {

enum class Zone { inner, annulus, other };

Zone zone_of(Point2 p, double n, const HarvestGeometry& geo) {
  double r = norm(p);
  if (r <= geo.inner * n) return Zone::inner;
  if (r >= geo.annulus_lo * n && r <= geo.annulus_hi * n) return Zone::annulus;
  return Zone::other;
}

std::shared_ptr<const GasketGraph> region_gasket(const GasketGraph& g, const Region& u, int x, int y, int& lx,
                                                 int& ly) {
  InducedGraph sub = admissible_distance_graph(g, u);
  lx = sub.from_parent[static_cast<std::size_t>(x)];
  ly = sub.from_parent[static_cast<std::size_t>(y)];
  std::vector<int> mult(sub.graph.size(), 0);
  return std::make_shared<const GasketGraph>(gasket_from_graph(std::move(sub.graph), std::move(mult)));
}

}  // namespace

std::vector<CrossingInstance> crossings_in(std::shared_ptr<const ClusterSet> clusters, int n,
                                           const HarvestGeometry& geo) {
  std::vector<CrossingInstance> out;
  auto cluster = clusters->outermost_surrounding({0.0, 0.0});
  if (!cluster) return out;
  GasketGraph g = build_gasket(clusters, *cluster);

  // Hole loops reaching both the inner ball and the annulus.
  std::vector<int> candidates;
  for (int id : clusters->cluster_loops[static_cast<std::size_t>(*cluster)]) {
    const auto& loop = clusters->loops[static_cast<std::size_t>(id)];
    if (loop.exterior) continue;
    bool in = false, ann = false;
    for (const DualEdge& e : loop.edges) {
      Zone z = zone_of(clusters->lattice->position(static_cast<std::size_t>(e.site)), n, geo);
      in = in || z == Zone::inner;
      ann = ann || z == Zone::annulus;
    }
    if (in && ann) candidates.push_back(id);
  }

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const int a = candidates[i], b = candidates[j];
      auto contacts = contact_vertices(g, a, b);
      std::vector<Zone> zones;
      std::vector<std::size_t> anchors;
      for (std::size_t k = 0; k < contacts.size(); ++k) {
        zones.push_back(zone_of(g.graph.position(contacts[k]), n, geo));
        if (zones.back() == Zone::annulus) anchors.push_back(k);
      }
      if (anchors.size() < 2) continue;
      CrossingInstance inst;
      inst.loop_a = a;
      inst.loop_b = b;
      inst.inner_scale = geo.inner * n;
      inst.outer_scale = geo.annulus_hi * n;
      // Each stretch between cyclically consecutive annulus contacts that
      // passes through the inner ball gives a quadruple.
      const std::size_t m = contacts.size();
      for (std::size_t s = 0; s < anchors.size(); ++s) {
        std::size_t from = anchors[s], to = anchors[(s + 1) % anchors.size()];
        int first = -1, last = -1;
        for (std::size_t k = (from + 1) % m; k != to; k = (k + 1) % m) {
          if (zones[k] != Zone::inner) continue;
          if (first < 0) first = contacts[k];
          last = contacts[k];
        }
        if (first < 0 || first == last) continue;
        Quadruple q;
        q.x_prime = contacts[from];
        q.y_prime = contacts[to];
        q.x = first;
        q.y = last;
        if (q.x_prime == q.y_prime) continue;
        Region u;
        try {
          u = region_between(g, a, b, q.x_prime, q.y_prime, ArcOrder::as_given);
        } catch (const std::runtime_error&) {
          continue;
        }
        if (!u.contains(q.x) || !u.contains(q.y)) continue;
        q.region = region_gasket(g, u, q.x, q.y, q.local_x, q.local_y);
        inst.quadruples.push_back(std::move(q));
      }
      if (!inst.quadruples.empty()) out.push_back(std::move(inst));
    }
  }
  return out;
}

std::vector<CrossingInstance> harvest_crossings(int n, double p, std::size_t trials, std::uint64_t seed,
                                                const HarvestGeometry& geometry, unsigned threads) {
  auto per_trial = parallel_map(
      trials,
      [&](std::size_t t) {
        const std::uint64_t s = derive_seed(seed, "harvest", t);
        PercolationConfig config = sample(n, p, s);
        wire_boundary(config);
        auto clusters = std::make_shared<const ClusterSet>(decompose(config));
        auto found = crossings_in(clusters, n, geometry);
        for (auto& inst : found) {
          inst.config_seed = s;
          inst.trial = t;
        }
        return found;
      },
      threads);
  std::vector<CrossingInstance> out;
  for (auto& batch : per_trial) {
    for (auto& inst : batch) out.push_back(std::move(inst));
  }
  return out;
}

double instance_value(const CrossingInstance& instance, const MetricScheme& scheme) {
  double best = 0.0;
  for (const Quadruple& q : instance.quadruples) {
    best = std::max(best, metric_distance(*q.region, q.region->whole(), scheme, q.local_x, q.local_y));
  }
  return best;
}

double quantile_type7(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double NormalizationEstimate::quantile(double q) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (std::abs(levels[i] - q) < 1e-12) return quantiles[i];
  }
  throw std::out_of_range("NormalizationEstimate: quantile level not estimated");
}

NormalizationEstimate estimate_from_values(std::vector<double> values, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("estimate: no instances");
  std::sort(values.begin(), values.end());
  NormalizationEstimate e;
  e.sample_count = values.size();
  for (double q : kQuantileLevels) {
    e.levels.push_back(q);
    e.quantiles.push_back(quantile_type7(values, q));
  }
  e.median = quantile_type7(values, 0.5);

  const std::size_t levels = e.levels.size();
  std::vector<std::vector<double>> boot(levels);
  CounterRng rng(seed, tag_hash("bootstrap"));
  std::vector<double> resample(values.size());
  for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
    for (double& v : resample) v = values[rng.below(values.size())];
    std::sort(resample.begin(), resample.end());
    for (std::size_t l = 0; l < levels; ++l) boot[l].push_back(quantile_type7(resample, e.levels[l]));
  }
  for (std::size_t l = 0; l < levels; ++l) {
    std::sort(boot[l].begin(), boot[l].end());
    e.ci_lo.push_back(quantile_type7(boot[l], 0.025));
    e.ci_hi.push_back(quantile_type7(boot[l], 0.975));
  }
  return e;
}

NormalizationEstimate estimate_m(const std::vector<CrossingInstance>& instances, const MetricScheme& scheme,
                                 double eps, std::uint64_t seed) {
  if (instances.empty()) throw std::invalid_argument("estimate_m: empty instance list");
  std::vector<double> values;
  for (const auto& inst : instances) values.push_back(instance_value(inst, scheme));
  NormalizationEstimate e = estimate_from_values(std::move(values), seed);
  e.scheme = scheme.name();
  e.eps = eps;
  return e;
}

ScalingFit scaling_fit(const std::vector<double>& h, const std::vector<double>& m) {
  if (h.size() < 3 || h.size() != m.size()) throw std::invalid_argument("scaling_fit: need >= 3 sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(m[i] > 0.0)) throw std::invalid_argument("scaling_fit: values must be positive");
    double x = std::log(1.0 / h[i]), y = std::log(m[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("scaling_fit: sizes must differ");
  ScalingFit fit;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  SleParameters params = make_parameters(16.0 / 6.0);
  fit.window_lo = params.d_dbl - 0.3;
  fit.window_hi = params.d_sle + 0.3;
  fit.pass = fit.slope >= fit.window_lo && fit.slope <= fit.window_hi;
  return fit;
}

ComparabilityReport quantile_comparability(const std::vector<NormalizationEstimate>& by_size, double q_lo,
                                           double q_hi) {
  ComparabilityReport r;
  for (const auto& e : by_size) {
    double hi = e.quantile(q_hi);
    r.ratios.push_back(hi > 0.0 ? e.quantile(q_lo) / hi : 0.0);
  }
  for (double x : r.ratios) r.max_ratio = std::max(r.max_ratio, x);
  bool positive = !r.ratios.empty();
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    if (!(r.ratios[i] > 0.0)) positive = false;
    if (i == 0 || !positive) continue;
    double f = r.ratios[i] / r.ratios[i - 1];
    r.max_step_factor = std::max(r.max_step_factor, std::max(f, 1.0 / f));
  }
  r.pass = positive && r.ratios.size() >= 2 && r.max_step_factor < 2.0;
  return r;
}

ScalingStudy scaling_study(const MetricScheme& scheme, const std::vector<int>& sizes, std::size_t trials,
                           std::uint64_t seed, const HarvestGeometry& geometry, unsigned threads) {
  ScalingStudy study;
  std::vector<double> h, m;
  for (int n : sizes) {
    auto instances = harvest_crossings(n, kCriticalP, trials, derive_seed(seed, "mnorm-size", static_cast<std::uint64_t>(n)),
                                       geometry, threads);
    study.sizes.push_back(n);
    study.instances.push_back(instances.size());
    if (instances.empty()) continue;
    auto values = parallel_map(
        instances.size(), [&](std::size_t i) { return instance_value(instances[i], scheme); }, threads);
    NormalizationEstimate e = estimate_from_values(std::move(values), derive_seed(seed, "mnorm-boot", static_cast<std::uint64_t>(n)));
    e.scheme = scheme.name();
    e.n = n;
    study.estimates.push_back(e);
    h.push_back(1.0 / n);
    m.push_back(e.median);
  }
  if (h.size() >= 3) study.fit = scaling_fit(h, m);
  if (study.estimates.size() >= 2) study.comparability = quantile_comparability(study.estimates);
  return study;
}

}  // namespace clem
