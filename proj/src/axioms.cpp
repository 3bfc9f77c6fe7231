#include "clem/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <memory>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "clem/parallel.hpp"
#include "clem/percolation.hpp"
#include "clem/rng.hpp"

namespace clem {

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::symmetry:
      return "symmetry";
    case Axiom::triangle:
      return "triangle";
    case Axiom::separability:
      return "separability";
    case Axiom::compatibility:
      return "compatibility";
    case Axiom::monotonicity_i:
      return "monotonicity_i";
    case Axiom::monotonicity_ii:
      return "monotonicity_ii";
    case Axiom::series:
      return "series";
    case Axiom::parallel:
      return "parallel";
  }
  return "?";
}

void AxiomReport::add(const CheckResult& r, std::size_t instance) {
  if (r.outcome == Outcome::skip) {
    ++skipped;
    return;
  }
  ++instances_tested;
  if (r.outcome == Outcome::fail) {
    Violation v = r.detail;
    v.instance = instance;
    violations.push_back(std::move(v));
  }
}

double AxiomReport::skip_rate() const {
  std::size_t total = instances_tested + skipped;
  return total == 0 ? 1.0 : static_cast<double>(skipped) / static_cast<double>(total);
}

bool AxiomReport::pass() const { return violations.empty() && skip_rate() <= kMaxSkipRate; }

namespace {

CheckResult skip() { return {}; }

// lhs must dominate rhs up to tolerance.
CheckResult dominate(double lhs, double rhs, std::vector<int> witness) {
  CheckResult r;
  r.detail.witness = std::move(witness);
  r.detail.lhs = lhs;
  r.detail.rhs = rhs;
  r.detail.slack = lhs - rhs;
  bool ok = lhs == rhs || lhs >= rhs - kAxiomTolerance * (1.0 + std::abs(rhs));
  r.outcome = ok ? Outcome::pass : Outcome::fail;
  return r;
}

CheckResult equal(double a, double b, std::vector<int> witness) {
  CheckResult r;
  r.detail.witness = std::move(witness);
  r.detail.lhs = a;
  r.detail.rhs = b;
  r.detail.slack = -std::abs(a - b);
  bool ok = a == b || std::abs(a - b) <= kAxiomTolerance * (1.0 + std::abs(b));
  r.outcome = ok ? Outcome::pass : Outcome::fail;
  return r;
}

// Component labels of U minus `removed`, indexed by gasket vertex.
std::vector<int> labels_without(const GasketGraph& g, const Region& u, const std::vector<int>& removed) {
  InducedGraph sub = admissible_distance_graph(g, u);
  std::vector<bool> gone(sub.graph.size(), false);
  for (int v : removed) {
    int lv = sub.from_parent[static_cast<std::size_t>(v)];
    if (lv >= 0) gone[static_cast<std::size_t>(lv)] = true;
  }
  auto local = components_without(sub.graph, gone);
  std::vector<int> out(g.size(), -1);
  for (std::size_t i = 0; i < local.size(); ++i) out[static_cast<std::size_t>(sub.to_parent[i])] = local[i];
  return out;
}

std::vector<int> with_label(const std::vector<int>& labels, int label) {
  std::vector<int> out;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == label) out.push_back(static_cast<int>(v));
  }
  return out;
}

// Spatial hash over points; answers "is any point within r of p".
class PointGrid {
 public:
  PointGrid(const Graph& g, const std::vector<int>& vertices, double cell) : g_(g), cell_(cell) {
    for (int v : vertices) cells_[key(g.position(v))].push_back(v);
  }

  template <class Fn>
  void near(Point2 p, Fn&& fn) const {
    auto [cx, cy] = coords(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find(pack(cx + dx, cy + dy));
        if (it == cells_.end()) continue;
        for (int v : it->second) fn(v);
      }
    }
  }

 private:
  std::pair<std::int64_t, std::int64_t> coords(Point2 p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)), static_cast<std::int64_t>(std::floor(p.y / cell_))};
  }
  static std::uint64_t pack(std::int64_t a, std::int64_t b) {
    return (static_cast<std::uint64_t>(a) << 32) ^ (static_cast<std::uint64_t>(b) & 0xffffffffULL);
  }
  std::uint64_t key(Point2 p) const {
    auto [a, b] = coords(p);
    return pack(a, b);
  }
  const Graph& g_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

bool far_apart(const Graph& g, const std::vector<int>& a, const std::vector<int>& b, double r) {
  if (r <= 0.0) return true;
  PointGrid grid(g, b, r);
  for (int v : a) {
    bool close = false;
    grid.near(g.position(v), [&](int w) {
      if (distance(g.position(v), g.position(w)) < r) close = true;
    });
    if (close) return false;
  }
  return true;
}

double dist(const MetricScheme& scheme, const GasketGraph& g, const Region& u, int a, int b) {
  return metric_distance(g, u, scheme, a, b);
}

}  // namespace

CheckResult check_series(const MetricScheme& scheme, const GasketGraph& g, const Region& u, int x, int y, int z1,
                         int z2, AxiomScale scale) {
  for (int v : {x, y, z1, z2}) {
    if (!u.contains(v)) return skip();
  }
  if (x == y || x == z1 || x == z2 || y == z1 || y == z2) return skip();
  auto lx = labels_without(g, u, {z1});
  if (lx[static_cast<std::size_t>(y)] == lx[static_cast<std::size_t>(x)]) return skip();
  if (z2 != z1 && lx[static_cast<std::size_t>(z2)] == lx[static_cast<std::size_t>(x)]) return skip();
  auto ly = labels_without(g, u, {z2});
  if (ly[static_cast<std::size_t>(x)] == ly[static_cast<std::size_t>(y)]) return skip();
  if (z2 != z1 && ly[static_cast<std::size_t>(z1)] == ly[static_cast<std::size_t>(y)]) return skip();
  auto kx = with_label(lx, lx[static_cast<std::size_t>(x)]);
  auto ky = with_label(ly, ly[static_cast<std::size_t>(y)]);
  if (!far_apart(g.graph, kx, ky, scale.c_ser * scale.eps)) return skip();

  InternalMetric m = internal_metric(g, u, scheme, {x, y, z1, z2});
  double lhs = m(0, 1);
  double rhs = m(0, 2) + m(3, 1);
  return dominate(lhs, rhs, {x, y, z1, z2});
}

CheckResult check_parallel(const MetricScheme& scheme, const GasketGraph& g, const Region& u, int x, int y,
                           const std::vector<int>& cut, const Region& v_x, double c_par, AxiomScale scale) {
  if (cut.empty() || x == y || !u.contains(x) || !u.contains(y)) return skip();
  for (int z : cut) {
    if (z == x || z == y || !u.contains(z) || !v_x.contains(z)) return skip();
  }
  if (!v_x.contains(x)) return skip();
  for (int v : v_x.vertices) {
    if (!u.contains(v)) return skip();
  }
  auto labels = labels_without(g, u, cut);
  if (labels[static_cast<std::size_t>(x)] == labels[static_cast<std::size_t>(y)]) return skip();
  auto kx = with_label(labels, labels[static_cast<std::size_t>(x)]);
  // V_x must contain every vertex of U closer than c_ser eps to K_x.
  const double r = scale.c_ser * scale.eps;
  if (r > 0.0) {
    PointGrid grid(g.graph, u.vertices, r);
    for (int v : kx) {
      bool ok = true;
      grid.near(g.graph.position(v), [&](int w) {
        if (distance(g.graph.position(v), g.graph.position(w)) < r && !v_x.contains(w)) ok = false;
      });
      if (!ok) return skip();
    }
  }
  double duxy = dist(scheme, g, u, x, y);
  std::vector<int> marked{x};
  marked.insert(marked.end(), cut.begin(), cut.end());
  InternalMetric mx = internal_metric(g, v_x, scheme, marked);
  double best = kInfiniteDistance;
  for (std::size_t i = 1; i < marked.size(); ++i) best = std::min(best, mx(0, i));
  std::vector<int> witness{x, y};
  witness.insert(witness.end(), cut.begin(), cut.end());
  return dominate(c_par * duxy, best, std::move(witness));
}

std::vector<int> simple_path_vertices(const GasketGraph& g, const Region& u, int x, int y) {
  if (x == y) return {x};
  InducedGraph sub = admissible_distance_graph(g, u);
  const int lx = sub.from_parent[static_cast<std::size_t>(x)], ly = sub.from_parent[static_cast<std::size_t>(y)];
  Graph h = sub.graph;
  const int extra = h.add_edge(lx, ly);
  for (const auto& block : biconnected_blocks(h)) {
    if (!std::binary_search(block.begin(), block.end(), extra)) continue;
    std::vector<int> out;
    for (int e : block) {
      auto [a, b] = h.edge(e);
      out.push_back(sub.to_parent[static_cast<std::size_t>(a)]);
      out.push_back(sub.to_parent[static_cast<std::size_t>(b)]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // Only vertices joined to x in U are on x-y paths; if x and y are
    // disconnected the added edge forms a bridge block {x, y}.
    return out;
  }
  return {x, y};
}

namespace {

struct DeadEnds {
  bool valid = false;
  std::vector<std::vector<int>> components;  ///< components of V' \ V
  std::vector<int> attachments;              ///< single attachment vertex per component
};

// Components of V' \ V, each required to meet V in exactly one vertex.
DeadEnds dead_ends(const GasketGraph& g, const Region& v, const Region& v_prime) {
  DeadEnds out;
  auto labels = labels_without(g, v_prime, v.vertices);
  std::unordered_map<int, std::size_t> slot;
  for (int w : v_prime.vertices) {
    int l = labels[static_cast<std::size_t>(w)];
    if (l < 0) continue;
    auto [it, inserted] = slot.emplace(l, out.components.size());
    if (inserted) out.components.emplace_back();
    out.components[it->second].push_back(w);
  }
  for (const auto& comp : out.components) {
    std::vector<int> attach;
    for (int w : comp) {
      for (const auto& a : g.graph.arcs(w)) {
        if (v.contains(a.to)) attach.push_back(a.to);
      }
    }
    std::sort(attach.begin(), attach.end());
    attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
    if (attach.size() != 1) return out;
    out.attachments.push_back(attach[0]);
  }
  out.valid = true;
  return out;
}

bool hops_at_least(const GasketGraph& g, const Region& v_prime, const std::vector<int>& added, int x, int y,
                   double min_hops) {
  if (min_hops <= 0.0 || added.empty()) return true;
  InducedGraph sub = admissible_distance_graph(g, v_prime);
  for (int s : {x, y}) {
    auto d = bfs_distances(sub.graph, sub.from_parent[static_cast<std::size_t>(s)]);
    for (int w : added) {
      int dw = d[static_cast<std::size_t>(sub.from_parent[static_cast<std::size_t>(w)])];
      if (dw != kUnreachable && dw < min_hops) return false;
    }
  }
  return true;
}

CheckResult monotone(const MetricScheme& scheme, const GasketGraph& g, const Region& v_prime, int x, int y,
                     double dv, double dvp) {
  CheckResult r = dominate(dv, dvp, {x, y});
  if (r.outcome == Outcome::pass || scheme.kind != SchemeKind::resistance) return r;
  // Resistance may move the endpoints within one lattice step.
  std::vector<int> bx{x}, by{y};
  for (const auto& a : g.graph.arcs(x)) {
    if (v_prime.contains(a.to)) bx.push_back(a.to);
  }
  for (const auto& a : g.graph.arcs(y)) {
    if (v_prime.contains(a.to)) by.push_back(a.to);
  }
  std::vector<int> marked = bx;
  marked.insert(marked.end(), by.begin(), by.end());
  InternalMetric m = internal_metric(g, v_prime, scheme, marked);
  double best = dvp;
  for (std::size_t i = 0; i < bx.size(); ++i) {
    for (std::size_t j = 0; j < by.size(); ++j) best = std::min(best, m(i, bx.size() + j));
  }
  return dominate(dv, best, {x, y});
}

}  // namespace

CompatMonoResult check_compat_mono(const MetricScheme& scheme, const GasketGraph& g, const Region& v,
                                   const Region& v_prime, int x, int y, AxiomScale scale) {
  CompatMonoResult out;
  for (int w : v.vertices) {
    if (!v_prime.contains(w)) return out;
  }
  if (!v.contains(x) || !v.contains(y)) return out;
  std::vector<int> added;
  for (int w : v_prime.vertices) {
    if (!v.contains(w)) added.push_back(w);
  }
  const double dv = dist(scheme, g, v, x, y);
  const double dvp = dist(scheme, g, v_prime, x, y);

  DeadEnds de = dead_ends(g, v, v_prime);
  bool behind = de.valid && hops_at_least(g, v_prime, added, x, y, scale.c_ser * scale.eps);
  if (behind) {
    out.compatibility = equal(dvp, dv, {x, y});
    out.monotonicity_i = monotone(scheme, g, v_prime, x, y, dv, dvp);
  }
  auto on_paths = simple_path_vertices(g, v_prime, x, y);
  bool off_paths = std::none_of(added.begin(), added.end(), [&](int w) {
    return std::binary_search(on_paths.begin(), on_paths.end(), w);
  });
  if (off_paths) out.monotonicity_ii = monotone(scheme, g, v_prime, x, y, dv, dvp);
  return out;
}

CheckResult check_separability(const MetricScheme& scheme, const GasketGraph& g, const Region& v,
                               const Region& v_prime, int x, int y) {
  if (!v.contains(x) || !v.contains(y)) return skip();
  for (int w : v.vertices) {
    if (!v_prime.contains(w)) return skip();
  }
  DeadEnds de = dead_ends(g, v, v_prime);
  if (!de.valid) return skip();
  // Removal order: farthest-first inside each dead end, so every V'_k
  // still consists of dead ends over V.
  std::vector<std::pair<int, int>> order;  // (-depth, vertex)
  for (std::size_t c = 0; c < de.components.size(); ++c) {
    std::vector<int> members = de.components[c];
    members.push_back(de.attachments[c]);
    Region r = make_region(members);
    InducedGraph sub = admissible_distance_graph(g, r);
    auto d = bfs_distances(sub.graph, sub.from_parent[static_cast<std::size_t>(de.attachments[c])]);
    for (int w : de.components[c]) order.emplace_back(-d[static_cast<std::size_t>(sub.from_parent[static_cast<std::size_t>(w)])], w);
  }
  std::sort(order.begin(), order.end());
  const double dv = dist(scheme, g, v, x, y);
  std::vector<int> current = v_prime.vertices;
  std::vector<bool> removed(g.size(), false);
  const std::size_t steps = order.size();
  const std::size_t stride = std::max<std::size_t>(1, steps / 16);
  CheckResult result = equal(dist(scheme, g, v_prime, x, y), dv, {x, y});
  for (std::size_t k = 0; k < steps && result.outcome == Outcome::pass; ++k) {
    removed[static_cast<std::size_t>(order[k].second)] = true;
    if ((k + 1) % stride != 0 && k + 1 != steps) continue;
    std::vector<int> vk;
    for (int w : v_prime.vertices) {
      if (!removed[static_cast<std::size_t>(w)]) vk.push_back(w);
    }
    result = equal(dist(scheme, g, make_region(std::move(vk)), x, y), dv, {x, y});
  }
  return result;
}

CheckResult check_symmetry(const InternalMetric& m) {
  CheckResult r;
  r.outcome = Outcome::pass;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      CheckResult e = equal(m(i, j), m(j, i), {m.marked[i], m.marked[j]});
      if (i == j) e = equal(m(i, i), 0.0, {m.marked[i]});
      if (e.outcome == Outcome::fail) return e;
    }
  }
  return r;
}

CheckResult check_triangle(const InternalMetric& m) {
  CheckResult r;
  r.outcome = Outcome::pass;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        CheckResult e = dominate(m(i, j) + m(j, k), m(i, k), {m.marked[i], m.marked[j], m.marked[k]});
        if (e.outcome == Outcome::fail) return e;
      }
    }
  }
  return r;
}

double shortcut_metric(const std::vector<double>& base, const std::vector<double>& d_path, std::size_t size,
                       const ShortcutParams& params, std::size_t i, std::size_t j) {
  std::vector<double> best(size, kInfiniteDistance);
  std::vector<bool> done(size, false);
  best[i] = 0.0;
  for (std::size_t iter = 0; iter < size; ++iter) {
    std::size_t u = size;
    for (std::size_t v = 0; v < size; ++v) {
      if (!done[v] && (u == size || best[v] < best[u])) u = v;
    }
    if (u == size || best[u] == kInfiniteDistance) break;
    if (u == j) break;
    done[u] = true;
    for (std::size_t v = 0; v < size; ++v) {
      if (done[v] || v == u) continue;
      double cost = d_path[u * size + v] < params.eps ? params.a_eps : base[u * size + v];
      if (best[u] + cost < best[v]) best[v] = best[u] + cost;
    }
  }
  return best[j];
}

namespace {

struct TrialChecks {
  std::array<std::vector<CheckResult>, 8> by_axiom;
};

std::size_t axiom_slot(Axiom a) { return static_cast<std::size_t>(a); }

int random_vertex(CounterRng& rng, std::size_t n) { return static_cast<int>(rng.below(n)); }

TrialChecks run_trial(const HarnessConfig& config, std::size_t t) {
  TrialChecks out;
  auto record = [&](Axiom a, CheckResult r) { out.by_axiom[axiom_slot(a)].push_back(std::move(r)); };
  auto skip_all = [&] {
    for (Axiom a : kAllAxioms) record(a, skip());
    return out;
  };
  std::vector<int> sizes;
  for (int n : {16, 24, 32, 48, 64}) {
    if (n <= config.n_max) sizes.push_back(n);
  }
  if (sizes.empty()) sizes.push_back(std::max(2, config.n_max));
  CounterRng rng(derive_seed(config.seed, "axiom-trial", t));
  const int n = sizes[rng.below(sizes.size())];
  auto clusters =
      std::make_shared<const ClusterSet>(decompose(sample(n, kCriticalP, derive_seed(config.seed, "axiom-config", t))));
  auto largest = clusters->largest_cluster();
  if (!largest || clusters->clusters[static_cast<std::size_t>(*largest)].size() < 4) return skip_all();
  GasketGraph g = build_gasket(clusters, *largest);
  const Region u = g.whole();
  const std::size_t size = g.size();
  const MetricScheme& scheme = config.scheme;
  AxiomScale scale;
  if (scheme.kind == SchemeKind::geodesic_functional) scale.c_ser = scheme.functional.c_ser();

  // Symmetry and triangle inequality on a random marked set.
  std::vector<int> marked;
  while (marked.size() < std::min<std::size_t>(6, size)) {
    int v = random_vertex(rng, size);
    if (std::find(marked.begin(), marked.end(), v) == marked.end()) marked.push_back(v);
  }
  InternalMetric m = internal_metric(g, u, scheme, marked);
  record(Axiom::symmetry, check_symmetry(m));
  record(Axiom::triangle, check_triangle(m));

  // Series law through the first and last separating cut vertices of a
  // shortest x-y path.
  CheckResult series = skip();
  for (int attempt = 0; attempt < 16 && series.outcome == Outcome::skip; ++attempt) {
    int x = random_vertex(rng, size), y = random_vertex(rng, size);
    if (x == y) continue;
    auto to_y = bfs_distances(g.graph, y);
    if (to_y[static_cast<std::size_t>(x)] == kUnreachable) continue;
    std::vector<int> path{x};
    while (path.back() != y) {
      int v = path.back();
      for (const auto& a : g.graph.arcs(v)) {
        if (to_y[static_cast<std::size_t>(a.to)] == to_y[static_cast<std::size_t>(v)] - 1) {
          path.push_back(a.to);
          break;
        }
      }
    }
    std::vector<int> separating;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      int z = path[i];
      if (!g.cut_vertices[static_cast<std::size_t>(z)]) continue;
      auto labels = labels_without(g, u, {z});
      if (labels[static_cast<std::size_t>(x)] != labels[static_cast<std::size_t>(y)]) separating.push_back(z);
    }
    if (separating.empty()) continue;
    series = check_series(scheme, g, u, x, y, separating.front(), separating.back(), scale);
  }
  record(Axiom::series, series);

  // Generalized parallel law at a minimum vertex cut.
  CheckResult parallel = skip();
  for (int attempt = 0; attempt < 16 && parallel.outcome == Outcome::skip; ++attempt) {
    int x = random_vertex(rng, size), y = random_vertex(rng, size);
    if (x == y || g.graph.adjacent(x, y)) continue;
    Separation sep = separation_points(g, u, x, y);
    if (sep.size == 0 || sep.size == kUnboundedCut) continue;
    Region v_x = u;
    if (scheme.kind != SchemeKind::resistance) {
      auto labels = labels_without(g, u, sep.cut);
      auto kx = with_label(labels, labels[static_cast<std::size_t>(x)]);
      kx.insert(kx.end(), sep.cut.begin(), sep.cut.end());
      v_x = make_region(std::move(kx));
    }
    parallel = check_parallel(scheme, g, u, x, y, sep.cut, v_x, scheme.c_par(sep.size), scale);
  }
  record(Axiom::parallel, parallel);

  // Compatibility, monotonicity (i) and separability on a dead-end removal;
  // monotonicity (ii) on the restriction to the x-y simple-path vertices.
  CompatMonoResult cm;
  CheckResult separability = skip();
  std::vector<int> cuts;
  for (std::size_t v = 0; v < size; ++v) {
    if (g.cut_vertices[v]) cuts.push_back(static_cast<int>(v));
  }
  int x = random_vertex(rng, size), y = random_vertex(rng, size);
  for (int attempt = 0; attempt < 16 && !cuts.empty(); ++attempt) {
    int z = cuts[rng.below(cuts.size())];
    auto labels = labels_without(g, u, {z});
    std::vector<int> options;
    for (std::size_t v = 0; v < size; ++v) {
      int l = labels[v];
      if (l >= 0 && l != labels[static_cast<std::size_t>(x)] && l != labels[static_cast<std::size_t>(y)] &&
          std::find(options.begin(), options.end(), l) == options.end()) {
        options.push_back(l);
      }
    }
    if (options.empty()) continue;
    int chosen = options[rng.below(options.size())];
    std::vector<int> keep;
    for (std::size_t v = 0; v < size; ++v) {
      if (labels[v] != chosen) keep.push_back(static_cast<int>(v));
    }
    Region v = make_region(std::move(keep));
    cm = check_compat_mono(scheme, g, v, u, x, y, scale);
    separability = check_separability(scheme, g, v, u, x, y);
    break;
  }
  record(Axiom::compatibility, cm.compatibility);
  record(Axiom::monotonicity_i, cm.monotonicity_i);
  record(Axiom::separability, separability);
  Region on_paths = make_region(simple_path_vertices(g, u, x, y));
  record(Axiom::monotonicity_ii, check_compat_mono(scheme, g, on_paths, u, x, y, scale).monotonicity_ii);
  return out;
}

}  // namespace

std::vector<AxiomReport> run_axiom_harness(const HarnessConfig& config) {
  auto trials = parallel_map(config.trials, [&](std::size_t t) { return run_trial(config, t); }, config.threads);
  std::vector<AxiomReport> reports;
  for (Axiom a : kAllAxioms) {
    AxiomReport r;
    r.axiom = a;
    for (std::size_t t = 0; t < trials.size(); ++t) {
      for (const auto& c : trials[t].by_axiom[axiom_slot(a)]) r.add(c, t);
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  KsResult r;
  r.n1 = a.size();
  r.n2 = b.size();
  if (a.empty() || b.empty()) return r;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  r.statistic = d;
  const double en = std::sqrt(static_cast<double>(a.size()) * b.size() / static_cast<double>(a.size() + b.size()));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  if (lambda < 1e-3) {
    r.p_value = 1.0;
    return r;
  }
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  r.p_value = std::clamp(sum, 0.0, 1.0);
  return r;
}

KsResult translation_invariance_test(int n, std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (n < 12) throw std::invalid_argument("translation_invariance_test: n must be >= 12");
  const int shift = n / 2;
  const double w = n / 3.0;
  const int half = std::max(1, static_cast<int>(w / 2.0));
  auto samples = parallel_map(
      trials,
      [&](std::size_t t) {
        PercolationConfig cfg = sample(n, kCriticalP, derive_seed(seed, "translation", t));
        const TriDisk& disk = *cfg.lattice;
        std::array<double, 2> out{};
        for (int side = 0; side < 2; ++side) {
          const int cq = side == 0 ? -shift : shift;
          const Point2 centre = embed({cq, 0});
          const int a = disk.index({cq - half, 0}), b = disk.index({cq + half, 0});
          out[static_cast<std::size_t>(side)] = kInfiniteDistance;
          if (a < 0 || b < 0 || !cfg.is_open(a) || !cfg.is_open(b)) continue;
          std::vector<int> d(disk.size(), -1);
          std::deque<int> queue{a};
          d[static_cast<std::size_t>(a)] = 0;
          while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int k = 0; k < 6; ++k) {
              int nb = disk.neighbor(static_cast<std::size_t>(v), k);
              if (nb < 0 || !cfg.is_open(nb) || d[static_cast<std::size_t>(nb)] >= 0) continue;
              if (distance(disk.position(static_cast<std::size_t>(nb)), centre) > w) continue;
              d[static_cast<std::size_t>(nb)] = d[static_cast<std::size_t>(v)] + 1;
              queue.push_back(nb);
            }
          }
          if (d[static_cast<std::size_t>(b)] >= 0) out[static_cast<std::size_t>(side)] = d[static_cast<std::size_t>(b)];
        }
        return out;
      },
      threads);
  std::vector<double> left, right;
  for (const auto& s : samples) {
    left.push_back(s[0]);
    right.push_back(s[1]);
  }
  return ks_two_sample(std::move(left), std::move(right));
}

}  // namespace clem
