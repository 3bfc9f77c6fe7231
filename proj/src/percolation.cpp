#include "clem/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "clem/parallel.hpp"
#include "clem/rng.hpp"
#include "clem/union_find.hpp"

namespace clem {

namespace {
constexpr std::uint64_t kSiteStream = tag_hash("site");
}

PercolationConfig PercolationConfig::from_open_sites(int n, const std::vector<Axial>& sites) {
  PercolationConfig c;
  c.lattice = tri_disk(n);
  c.open.assign(c.lattice->size(), 0);
  c.p = 0.0;
  for (Axial a : sites) {
    int i = c.lattice->index(a);
    if (i < 0) throw std::out_of_range("from_open_sites: site outside the disk");
    c.open[static_cast<std::size_t>(i)] = 1;
  }
  return c;
}

PercolationConfig sample(int n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample: n must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample: p must lie in [0,1]");
  PercolationConfig c;
  c.lattice = tri_disk(n);
  c.p = p;
  c.seed = seed;
  c.open.resize(c.lattice->size());
  for (std::size_t i = 0; i < c.open.size(); ++i) {
    c.open[i] = uniform01(seed, kSiteStream, i) < p ? 1 : 0;
  }
  return c;
}

void wire_boundary(PercolationConfig& config) {
  const TriDisk& lat = *config.lattice;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (int k = 0; k < 6; ++k) {
      if (lat.neighbor(i, k) < 0) {
        config.open[i] = 1;
        break;
      }
    }
  }
}

std::optional<int> ClusterSet::outermost_surrounding(Point2 p) const {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!outermost[c]) continue;
    const auto& poly = loops[static_cast<std::size_t>(exterior_loop[c])].polygon;
    if (winding_number(poly, p) != 0) return static_cast<int>(c);
  }
  return std::nullopt;
}

std::optional<int> ClusterSet::largest_cluster() const {
  std::optional<int> best;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (!best || clusters[c].size() > clusters[static_cast<std::size_t>(*best)].size()) {
      best = static_cast<int>(c);
    }
  }
  return best;
}

ClusterSet decompose(const PercolationConfig& config) {
  const TriDisk& disk = *config.lattice;
  const std::size_t n_sites = disk.size();
  ClusterSet out;
  out.lattice = config.lattice;
  out.labels.assign(n_sites, -1);

  UnionFind open_sets(n_sites);
  for (std::size_t i = 0; i < n_sites; ++i) {
    if (!config.open[i]) continue;
    for (int k = 0; k < 3; ++k) {
      int j = disk.neighbor(i, k);
      if (j >= 0 && config.open[static_cast<std::size_t>(j)]) open_sets.unite(static_cast<int>(i), j);
    }
  }
  std::vector<int> root_to_id(n_sites, -1);
  for (std::size_t i = 0; i < n_sites; ++i) {
    if (!config.open[i]) continue;
    auto root = static_cast<std::size_t>(open_sets.find(static_cast<int>(i)));
    if (root_to_id[root] < 0) {
      root_to_id[root] = static_cast<int>(out.clusters.size());
      out.clusters.emplace_back();
    }
    out.labels[i] = root_to_id[root];
    out.clusters[static_cast<std::size_t>(root_to_id[root])].push_back(static_cast<int>(i));
  }
  const std::size_t n_clusters = out.clusters.size();
  out.cluster_loops.assign(n_clusters, {});
  out.exterior_loop.assign(n_clusters, -1);
  out.outermost.assign(n_clusters, false);
  if (n_clusters == 0) return out;

  // Interface edge (i, k) has id 6i + k. It ends at corner k of site i,
  // the triangle spanned by i and its neighbours j = k and l = k+1, whose
  // single outgoing interface edge is (i, k+1) when l is closed and
  // (l, k+5) otherwise.
  auto is_open = [&](int site) { return site >= 0 && config.open[static_cast<std::size_t>(site)] != 0; };
  auto successor = [&](std::size_t site, int k) -> std::size_t {
    int l = disk.neighbor(site, (k + 1) % 6);
    if (!is_open(l)) return 6 * site + static_cast<std::size_t>((k + 1) % 6);
    return 6 * static_cast<std::size_t>(l) + static_cast<std::size_t>((k + 5) % 6);
  };
  std::vector<std::uint8_t> used(6 * n_sites, 0);
  for (std::size_t i = 0; i < n_sites; ++i) {
    if (!config.open[i]) continue;
    for (int k0 = 0; k0 < 6; ++k0) {
      const std::size_t e0 = 6 * i + static_cast<std::size_t>(k0);
      if (used[e0] || is_open(disk.neighbor(i, k0))) continue;
      InterfaceLoop loop;
      loop.id = static_cast<int>(out.loops.size());
      loop.cluster = out.labels[i];
      std::size_t e = e0;
      while (!used[e]) {
        used[e] = true;
        const DualEdge de{static_cast<int>(e / 6), static_cast<int>(e % 6)};
        if (is_open(disk.neighbor(static_cast<std::size_t>(de.site), de.dir))) {
          throw std::logic_error("decompose: interface walk left the interface");
        }
        loop.edges.push_back(de);
        loop.polygon.push_back(disk.corner(static_cast<std::size_t>(de.site), (de.dir + 5) % 6));
        e = successor(static_cast<std::size_t>(de.site), de.dir);
      }
      if (e != e0) throw std::logic_error("decompose: interface path did not close");
      loop.area = signed_area(loop.polygon);
      loop.exterior = loop.area > 0.0;
      out.cluster_loops[static_cast<std::size_t>(loop.cluster)].push_back(loop.id);
      if (loop.exterior) {
        if (out.exterior_loop[static_cast<std::size_t>(loop.cluster)] != -1) {
          throw std::logic_error("decompose: cluster with two exterior loops");
        }
        out.exterior_loop[static_cast<std::size_t>(loop.cluster)] = loop.id;
      }
      out.loops.push_back(std::move(loop));
    }
  }

  // Closed sites connected to the outside of the disk.
  const int outside = static_cast<int>(n_sites);
  UnionFind closed_sets(n_sites + 1);
  for (std::size_t i = 0; i < n_sites; ++i) {
    if (config.open[i]) continue;
    for (int k = 0; k < 6; ++k) {
      int j = disk.neighbor(i, k);
      if (j < 0) {
        closed_sets.unite(static_cast<int>(i), outside);
      } else if (!config.open[static_cast<std::size_t>(j)]) {
        closed_sets.unite(static_cast<int>(i), j);
      }
    }
  }
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const auto& loop = out.loops[static_cast<std::size_t>(out.exterior_loop[c])];
    for (const DualEdge& de : loop.edges) {
      int j = disk.neighbor(static_cast<std::size_t>(de.site), de.dir);
      if (j < 0 || closed_sets.same(j, outside)) {
        out.outermost[c] = true;
        break;
      }
    }
  }
  return out;
}

namespace {

constexpr std::uint64_t kRhombusStream = tag_hash("rhombus");

std::vector<std::uint8_t> sample_rhombus(int n, double p, std::uint64_t seed) {
  std::vector<std::uint8_t> open(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < open.size(); ++i) {
    open[i] = uniform01(seed, kRhombusStream, i) < p ? 1 : 0;
  }
  return open;
}

// Multi-source BFS from the open sites of column q = 0; returns the hop
// distance to the nearest open site of column q = n-1.
std::optional<int> rhombus_bfs(int n, const std::vector<std::uint8_t>& open) {
  std::vector<int> dist(open.size(), -1);
  std::deque<int> queue;
  for (int r = 0; r < n; ++r) {
    int idx = r;  // q = 0
    if (open[static_cast<std::size_t>(idx)]) {
      dist[static_cast<std::size_t>(idx)] = 0;
      queue.push_back(idx);
    }
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int q = cur / n, r = cur % n;
    if (q == n - 1) return dist[static_cast<std::size_t>(cur)];
    for (const Axial& d : kDirections) {
      int nq = q + d.q, nr = r + d.r;
      if (nq < 0 || nq >= n || nr < 0 || nr >= n) continue;
      int nb = nq * n + nr;
      if (!open[static_cast<std::size_t>(nb)] || dist[static_cast<std::size_t>(nb)] >= 0) continue;
      dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
      queue.push_back(nb);
    }
  }
  return std::nullopt;
}

}  // namespace

bool rhombus_crossing(int n, double p, std::uint64_t seed) {
  return shortest_crossing_length(n, p, seed).has_value();
}

std::optional<int> shortest_crossing_length(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("rhombus size must be >= 1");
  return rhombus_bfs(n, sample_rhombus(n, p, seed));
}

double crossing_probability(int n, double p, int trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("crossing_probability: trials must be >= 1");
  auto hits = parallel_map(
      static_cast<std::size_t>(trials),
      [&](std::size_t t) { return rhombus_crossing(n, p, derive_seed(seed, "crossing", t)) ? 1 : 0; },
      threads);
  long total = 0;
  for (int h : hits) total += h;
  return static_cast<double>(total) / trials;
}

int annulus_crossings(const std::vector<Point2>& polygon, Point2 center, double inner, double outer) {
  // Reduce the polygon to its sequence of inside / outside visits; every
  // alternation is one crossing of the annulus.
  std::vector<int> states;
  for (const Point2& v : polygon) {
    double r = distance(v, center);
    int s = r <= inner ? -1 : (r >= outer ? 1 : 0);
    if (s == 0) continue;
    if (states.empty() || states.back() != s) states.push_back(s);
  }
  if (states.size() < 2) return 0;
  int count = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] != states[(i + 1) % states.size()]) ++count;
  }
  return count;
}

double four_crossing_rate(int n, double p, double inner, double outer, int trials,
                          std::uint64_t seed, unsigned threads) {
  if (!(inner > 0.0 && inner < outer && outer <= n)) {
    throw std::invalid_argument("four_crossing_rate: need 0 < inner < outer <= n");
  }
  if (trials < 1) throw std::invalid_argument("four_crossing_rate: trials must be >= 1");
  auto hits = parallel_map(
      static_cast<std::size_t>(trials),
      [&](std::size_t t) {
        PercolationConfig cfg = sample(n, p, derive_seed(seed, "four-crossing", t));
        ClusterSet cs = decompose(cfg);
        for (int loop_id : cs.exterior_loop) {
          const auto& poly = cs.loops[static_cast<std::size_t>(loop_id)].polygon;
          if (annulus_crossings(poly, {0.0, 0.0}, inner, outer) >= 4) return 1;
        }
        return 0;
      },
      threads);
  long total = 0;
  for (int h : hits) total += h;
  return static_cast<double>(total) / trials;
}

}  // namespace clem
