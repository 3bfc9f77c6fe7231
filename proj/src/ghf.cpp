#include "clem/ghf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clem {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;
}  // namespace

double line_metric(double a, double b) { return std::abs(a - b); }

MarkedMetricSpace MarkedMetricSpace::make(std::size_t size, std::vector<double> dist, std::vector<int> marked,
                                          std::vector<double> values) {
  if (size == 0) throw std::invalid_argument("metric space must be non-empty");
  if (dist.size() != size * size) throw std::invalid_argument("distance matrix has the wrong size");
  if (marked.size() != values.size()) throw std::invalid_argument("one value per marked point required");
  for (std::size_t i = 0; i < size; ++i) {
    if (dist[i * size + i] != 0.0) throw std::invalid_argument("nonzero diagonal");
    for (std::size_t j = 0; j < size; ++j) {
      double dij = dist[i * size + j];
      if (!(dij >= 0.0) || std::isinf(dij)) throw std::invalid_argument("distances must be finite and nonnegative");
      if (std::abs(dij - dist[j * size + i]) > kTol) throw std::invalid_argument("asymmetric distances");
      for (std::size_t k = 0; k < size; ++k) {
        if (dist[i * size + k] > dij + dist[j * size + k] + kTol) {
          throw std::invalid_argument("triangle inequality violated");
        }
      }
    }
  }
  std::vector<int> seen = marked;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw std::invalid_argument("duplicate marked point");
  for (int k : marked) {
    if (k < 0 || static_cast<std::size_t>(k) >= size) throw std::invalid_argument("marked point out of range");
  }
  MarkedMetricSpace s;
  s.size = size;
  s.dist = std::move(dist);
  s.marked = std::move(marked);
  s.values = std::move(values);
  return s;
}

MarkedMetricSpace MarkedMetricSpace::on_line(const std::vector<double>& points, std::vector<int> marked,
                                             std::vector<double> values) {
  std::vector<double> d(points.size() * points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) d[i * points.size() + j] = std::abs(points[i] - points[j]);
  }
  MarkedMetricSpace s = make(points.size(), std::move(d), std::move(marked), std::move(values));
  for (double p : points) s.embedding.push_back({p, 0.0});
  return s;
}

double MarkedMetricSpace::diameter() const {
  double m = 0.0;
  for (double v : dist) m = std::max(m, v);
  return m;
}

double d_infty(const std::vector<double>& w_dist, std::size_t w_size, const std::vector<int>& k1,
               const std::vector<double>& f1, const std::vector<int>& k2, const std::vector<double>& f2,
               const ValueMetric& dy) {
  if (k1.empty() && k2.empty()) return 0.0;
  if (k1.empty() || k2.empty()) return kInf;
  // The infimum is attained on finite sets: every point needs its best
  // partner, so d_inf is the largest of these best-partner costs.
  auto side = [&](const std::vector<int>& from, const std::vector<double>& fv, const std::vector<int>& to,
                  const std::vector<double>& tv) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      double best = kInf;
      for (std::size_t j = 0; j < to.size(); ++j) {
        double c = std::max(w_dist[static_cast<std::size_t>(from[i]) * w_size + static_cast<std::size_t>(to[j])],
                            dy(fv[i], tv[j]));
        best = std::min(best, c);
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(side(k1, f1, k2, f2), side(k2, f2, k1, f1));
}

double distortion(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r) {
  double dis = 0.0;
  for (const auto& [p, q] : r) {
    for (const auto& [p2, q2] : r) {
      dis = std::max(dis, std::abs(a.d(static_cast<std::size_t>(p), static_cast<std::size_t>(p2)) -
                                   b.d(static_cast<std::size_t>(q), static_cast<std::size_t>(q2))));
    }
  }
  return dis;
}

namespace {

bool covers(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r) {
  std::vector<bool> ca(a.size, false), cb(b.size, false);
  for (const auto& [p, q] : r) {
    ca[static_cast<std::size_t>(p)] = true;
    cb[static_cast<std::size_t>(q)] = true;
  }
  return std::all_of(ca.begin(), ca.end(), [](bool x) { return x; }) &&
         std::all_of(cb.begin(), cb.end(), [](bool x) { return x; });
}

// Position of each point in the marked list, -1 if unmarked.
std::vector<int> mark_index(const MarkedMetricSpace& s) {
  std::vector<int> idx(s.size, -1);
  for (std::size_t k = 0; k < s.marked.size(); ++k) idx[static_cast<std::size_t>(s.marked[k])] = static_cast<int>(k);
  return idx;
}

}  // namespace

double mark_mismatch(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r,
                     const ValueMetric& dy) {
  if (a.marked.empty() && b.marked.empty()) return 0.0;
  if (a.marked.empty() || b.marked.empty()) return kInf;
  auto ia = mark_index(a), ib = mark_index(b);
  std::vector<double> best_a(a.marked.size(), kInf), best_b(b.marked.size(), kInf);
  for (const auto& [p, q] : r) {
    int ka = ia[static_cast<std::size_t>(p)], kb = ib[static_cast<std::size_t>(q)];
    if (ka < 0 || kb < 0) continue;
    double c = dy(a.values[static_cast<std::size_t>(ka)], b.values[static_cast<std::size_t>(kb)]);
    best_a[static_cast<std::size_t>(ka)] = std::min(best_a[static_cast<std::size_t>(ka)], c);
    best_b[static_cast<std::size_t>(kb)] = std::min(best_b[static_cast<std::size_t>(kb)], c);
  }
  double worst = 0.0;
  for (double v : best_a) worst = std::max(worst, v);
  for (double v : best_b) worst = std::max(worst, v);
  return worst;
}

double correspondence_value(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r,
                            const ValueMetric& dy) {
  if (!covers(a, b, r)) throw std::invalid_argument("relation is not a correspondence");
  return distortion(a, b, r) / 2.0 + mark_mismatch(a, b, r, dy);
}

std::vector<double> glued_metric(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const Correspondence& r) {
  if (!covers(a, b, r)) throw std::invalid_argument("relation is not a correspondence");
  const std::size_t n = a.size + b.size;
  const double gap = distortion(a, b, r) / 2.0;
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < a.size; ++j) w[i * n + j] = a.d(i, j);
  }
  for (std::size_t i = 0; i < b.size; ++i) {
    for (std::size_t j = 0; j < b.size; ++j) w[(a.size + i) * n + a.size + j] = b.d(i, j);
  }
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < b.size; ++j) {
      double best = kInf;
      for (const auto& [p, q] : r) {
        best = std::min(best, a.d(i, static_cast<std::size_t>(p)) + gap + b.d(static_cast<std::size_t>(q), j));
      }
      w[i * n + a.size + j] = w[(a.size + j) * n + i] = best;
    }
  }
  return w;
}

double ghf_distance_exact(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const ValueMetric& dy) {
  if (a.size + b.size > kExactGhfLimit) {
    throw std::length_error("ghf_distance_exact: too many points, use ghf_distance_bounds");
  }
  const std::size_t np = a.size * b.size;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < b.size; ++j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  std::vector<double> clash(np * np);
  std::vector<double> thresholds{0.0};
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t q = 0; q < np; ++q) {
      double c = std::abs(a.d(static_cast<std::size_t>(pairs[p].first), static_cast<std::size_t>(pairs[q].first)) -
                          b.d(static_cast<std::size_t>(pairs[p].second), static_cast<std::size_t>(pairs[q].second)));
      clash[p * np + q] = c;
      thresholds.push_back(c);
    }
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  double best = kInf;
  for (double t : thresholds) {
    const double gap = t / 2.0;
    if (gap >= best) break;
    // Bron-Kerbosch with pivoting over pairs compatible at threshold t.
    auto compatible = [&](std::size_t p, std::size_t q) { return clash[p * np + q] <= t; };
    std::vector<std::size_t> r_set;
    std::function<void(std::vector<std::size_t>, std::vector<std::size_t>)> expand =
        [&](std::vector<std::size_t> p_set, std::vector<std::size_t> x_set) {
          if (p_set.empty() && x_set.empty()) {
            Correspondence rel;
            for (std::size_t k : r_set) rel.push_back(pairs[k]);
            if (!covers(a, b, rel)) return;
            best = std::min(best, gap + mark_mismatch(a, b, rel, dy));
            return;
          }
          std::size_t pivot = p_set.empty() ? x_set.front() : p_set.front();
          std::size_t pivot_degree = 0;
          for (const auto* set : {&p_set, &x_set}) {
            for (std::size_t u : *set) {
              std::size_t deg = 0;
              for (std::size_t v : p_set) deg += compatible(u, v) ? 1 : 0;
              if (deg > pivot_degree) {
                pivot_degree = deg;
                pivot = u;
              }
            }
          }
          std::vector<std::size_t> candidates;
          for (std::size_t v : p_set) {
            if (v == pivot || !compatible(pivot, v)) candidates.push_back(v);
          }
          for (std::size_t v : candidates) {
            std::vector<std::size_t> np_set, nx_set;
            for (std::size_t w : p_set) {
              if (w != v && compatible(v, w)) np_set.push_back(w);
            }
            for (std::size_t w : x_set) {
              if (compatible(v, w)) nx_set.push_back(w);
            }
            r_set.push_back(v);
            expand(std::move(np_set), std::move(nx_set));
            r_set.pop_back();
            p_set.erase(std::find(p_set.begin(), p_set.end(), v));
            x_set.push_back(v);
          }
        };
    std::vector<std::size_t> all(np);
    for (std::size_t k = 0; k < np; ++k) all[k] = k;
    expand(all, {});
  }
  return best;
}

GhfBounds ghf_distance_bounds(const MarkedMetricSpace& a, const MarkedMetricSpace& b, const ValueMetric& dy) {
  GhfBounds out;
  // Lower bound: any correspondence has distortion >= |diam A - diam B|, and
  // d_inf dominates the Hausdorff distance of the value sets.
  double value_gap = 0.0;
  if (a.marked.empty() != b.marked.empty()) {
    value_gap = kInf;
  } else {
    for (int pass = 0; pass < 2; ++pass) {
      const auto& from = pass == 0 ? a.values : b.values;
      const auto& to = pass == 0 ? b.values : a.values;
      for (double v : from) {
        double best = kInf;
        for (double w : to) best = std::min(best, dy(v, w));
        value_gap = std::max(value_gap, best);
      }
    }
  }
  out.lower = std::abs(a.diameter() - b.diameter()) / 2.0 + value_gap;

  // Upper bound: best of several profile matchings, then single-pair moves.
  // A profile is either eccentricity or distance to an anchor point.
  auto ecc = [](const MarkedMetricSpace& s) {
    std::vector<double> e(s.size, 0.0);
    for (std::size_t i = 0; i < s.size; ++i) {
      for (std::size_t j = 0; j < s.size; ++j) e[i] = std::max(e[i], s.d(i, j));
    }
    return e;
  };
  auto from_anchor = [](const MarkedMetricSpace& s, std::size_t anchor) {
    std::vector<double> e(s.size);
    for (std::size_t i = 0; i < s.size; ++i) e[i] = s.d(anchor, i);
    return e;
  };
  auto far_pair = [](const MarkedMetricSpace& s) {
    std::size_t u = 0, v = 0;
    for (std::size_t i = 0; i < s.size; ++i) {
      for (std::size_t j = 0; j < s.size; ++j) {
        if (s.d(i, j) > s.d(u, v)) {
          u = i;
          v = j;
        }
      }
    }
    return std::array<std::size_t, 2>{u, v};
  };
  const auto ia = mark_index(a), ib = mark_index(b);
  using Grid = std::vector<std::vector<bool>>;
  auto match = [&](const std::vector<double>& pa, const std::vector<double>& pb) {
    Grid g(a.size, std::vector<bool>(b.size, false));
    // Marked points prefer marked partners so the value term stays finite.
    auto pick = [&](double target, double value, bool marked, const std::vector<double>& prof,
                    const std::vector<int>& idx, const MarkedMetricSpace& s) {
      std::size_t best = 0;
      double best_cost = kInf;
      for (std::size_t j = 0; j < prof.size(); ++j) {
        bool jm = idx[j] >= 0;
        if (marked && !jm && !s.marked.empty()) continue;
        double c = std::abs(target - prof[j]);
        if (marked && jm) c += dy(value, s.values[static_cast<std::size_t>(idx[j])]);
        if (c < best_cost) {
          best_cost = c;
          best = j;
        }
      }
      return best;
    };
    for (std::size_t i = 0; i < a.size; ++i) {
      bool m = ia[i] >= 0;
      g[i][pick(pa[i], m ? a.values[static_cast<std::size_t>(ia[i])] : 0.0, m, pb, ib, b)] = true;
    }
    for (std::size_t j = 0; j < b.size; ++j) {
      bool m = ib[j] >= 0;
      g[pick(pb[j], m ? b.values[static_cast<std::size_t>(ib[j])] : 0.0, m, pa, ia, a)][j] = true;
    }
    return g;
  };
  std::vector<Grid> seeds{match(ecc(a), ecc(b))};
  for (std::size_t u : far_pair(a)) {
    for (std::size_t v : far_pair(b)) seeds.push_back(match(from_anchor(a, u), from_anchor(b, v)));
  }
  auto grid_relation = [&](const Grid& g) {
    Correspondence r;
    for (std::size_t i = 0; i < a.size; ++i) {
      for (std::size_t j = 0; j < b.size; ++j) {
        if (g[i][j]) r.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
    return r;
  };
  Grid in = seeds.front();
  double seed_value = kInf;
  for (const auto& g : seeds) {
    double v = correspondence_value(a, b, grid_relation(g), dy);
    if (v < seed_value) {
      seed_value = v;
      in = g;
    }
  }
  auto relation = [&] { return grid_relation(in); };
  double current = seed_value;
  Correspondence full;
  for (std::size_t i = 0; i < a.size; ++i) {
    for (std::size_t j = 0; j < b.size; ++j) full.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  double full_value = correspondence_value(a, b, full, dy);
  const std::size_t max_rounds = 4 * (a.size + b.size);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    double best_move = current;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size; ++i) {
      for (std::size_t j = 0; j < b.size; ++j) {
        in[i][j] = !in[i][j];
        Correspondence r = relation();
        if (covers(a, b, r)) {
          double v = correspondence_value(a, b, r, dy);
          if (v < best_move - 1e-15) {
            best_move = v;
            bi = i;
            bj = j;
          }
        }
        in[i][j] = !in[i][j];
      }
    }
    if (best_move >= current) break;
    in[bi][bj] = !in[bi][bj];
    current = best_move;
  }
  out.upper = std::min(current, full_value);
  return out;
}

HoelderVerdict hoelder_membership(const MarkedMetricSpace& a, const HoelderParams& params, const ValueMetric& dy,
                                  double origin) {
  HoelderVerdict v;
  for (double f : a.values) {
    if (dy(f, origin) > params.C) v.value_bound = false;
  }
  for (std::size_t i = 0; i < a.marked.size(); ++i) {
    for (std::size_t j = i + 1; j < a.marked.size(); ++j) {
      double d = a.d(static_cast<std::size_t>(a.marked[i]), static_cast<std::size_t>(a.marked[j]));
      double allowed = params.C * std::pow(std::max(d, params.r), params.alpha);
      if (dy(a.values[i], a.values[j]) > allowed * (1.0 + 1e-12)) v.increments = false;
    }
  }
  return v;
}

ConvergenceProbe sequence_convergence_probe(const std::vector<MarkedMetricSpace>& spaces, const ValueMetric& dy) {
  if (spaces.size() < 3) throw std::invalid_argument("sequence_convergence_probe: need at least 3 spaces");
  ConvergenceProbe p;
  const std::size_t k = spaces.size();
  p.count = k;
  p.pairwise.assign(k * k, 0.0);
  p.exact.assign(k * k, true);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      double v;
      bool exact = spaces[i].size + spaces[j].size <= kExactGhfLimit;
      v = exact ? ghf_distance_exact(spaces[i], spaces[j], dy) : ghf_distance_bounds(spaces[i], spaces[j], dy).upper;
      p.pairwise[i * k + j] = p.pairwise[j * k + i] = v;
      p.exact[i * k + j] = p.exact[j * k + i] = exact;
    }
  }
  for (std::size_t s = 0; s + 1 < k; ++s) {
    double t = 0.0;
    for (std::size_t i = s; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) t = std::max(t, p.pairwise[i * k + j]);
    }
    p.tail_sup.push_back(t);
  }
  p.cauchy = p.tail_sup.front() == 0.0 || p.tail_sup.back() <= 0.5 * p.tail_sup.front();
  return p;
}

}  // namespace clem
