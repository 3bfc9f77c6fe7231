#include "clem/gasket.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <deque>
#include <stdexcept>

namespace clem {

bool Region::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

int GasketGraph::local(int site) const {
  if (site < 0 || static_cast<std::size_t>(site) >= site_to_local_.size()) return -1;
  return site_to_local_[static_cast<std::size_t>(site)];
}

Region GasketGraph::whole() const {
  Region r;
  r.vertices.resize(size());
  for (std::size_t i = 0; i < size(); ++i) r.vertices[i] = static_cast<int>(i);
  return r;
}

namespace {

Graph with_sink(const Graph& g, const std::vector<int>& multiplicity, int& sink) {
  Graph h = g;
  sink = h.add_vertex();
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (int k = 0; k < multiplicity[v]; ++k) h.add_edge(static_cast<int>(v), sink);
  }
  return h;
}

}  // namespace

std::vector<bool> thin_flags_by_blocks(const Graph& g, const std::vector<int>& boundary_multiplicity) {
  int sink = -1;
  Graph h = with_sink(g, boundary_multiplicity, sink);
  std::vector<bool> thin(g.size(), false);
  for (const auto& block : biconnected_blocks(h)) {
    if (block.size() < 2) continue;
    bool has_sink = false;
    for (int e : block) {
      auto [a, b] = h.edge(e);
      if (a == sink || b == sink) has_sink = true;
    }
    if (!has_sink) continue;
    for (int e : block) {
      auto [a, b] = h.edge(e);
      if (a != sink) thin[static_cast<std::size_t>(a)] = true;
      if (b != sink) thin[static_cast<std::size_t>(b)] = true;
    }
  }
  return thin;
}

std::vector<bool> thin_flags_by_flow(const Graph& g, const std::vector<int>& boundary_multiplicity) {
  int sink = -1;
  Graph h = with_sink(g, boundary_multiplicity, sink);
  std::vector<bool> thin(g.size(), false);
  for (std::size_t v = 0; v < g.size(); ++v) {
    thin[v] = vertex_disjoint_paths(h, static_cast<int>(v), sink, 2) >= 2;
  }
  return thin;
}

GasketGraph build_gasket(std::shared_ptr<const ClusterSet> clusters, int cluster_id) {
  if (!clusters || cluster_id < 0 || static_cast<std::size_t>(cluster_id) >= clusters->cluster_count()) {
    throw std::out_of_range("build_gasket: no such cluster");
  }
  const auto& members = clusters->clusters[static_cast<std::size_t>(cluster_id)];
  if (members.empty()) throw std::invalid_argument("build_gasket: empty cluster");
  const TriDisk& disk = *clusters->lattice;

  GasketGraph g;
  g.clusters = clusters;
  g.cluster = cluster_id;
  g.sites = members;
  g.site_to_local_.assign(disk.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    g.site_to_local_[static_cast<std::size_t>(members[i])] = static_cast<int>(i);
    g.graph.add_vertex(disk.position(static_cast<std::size_t>(members[i])));
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      int j = disk.neighbor(static_cast<std::size_t>(members[i]), k);
      int lj = g.local(j);
      if (lj >= 0) g.graph.add_edge(static_cast<int>(i), lj);
    }
  }
  g.boundary_multiplicity.assign(members.size(), 0);
  g.loop_membership.assign(members.size(), {});
  for (int loop_id : clusters->cluster_loops[static_cast<std::size_t>(cluster_id)]) {
    const auto& loop = clusters->loops[static_cast<std::size_t>(loop_id)];
    for (const DualEdge& e : loop.edges) {
      auto v = static_cast<std::size_t>(g.local(e.site));
      if (loop.exterior) ++g.boundary_multiplicity[v];
      auto& m = g.loop_membership[v];
      if (m.empty() || m.back() != loop_id) {
        if (std::find(m.begin(), m.end(), loop_id) == m.end()) m.push_back(loop_id);
      }
    }
  }
  g.cut_vertices = articulation_points(g.graph);
  g.thin = thin_flags_by_blocks(g.graph, g.boundary_multiplicity);
  return g;
}

GasketGraph gasket_from_graph(Graph graph, std::vector<int> boundary_multiplicity) {
  if (boundary_multiplicity.size() != graph.size()) {
    throw std::invalid_argument("gasket_from_graph: multiplicity size mismatch");
  }
  GasketGraph g;
  g.graph = std::move(graph);
  g.sites.assign(g.graph.size(), -1);
  g.boundary_multiplicity = std::move(boundary_multiplicity);
  g.loop_membership.assign(g.graph.size(), {});
  g.cut_vertices = articulation_points(g.graph);
  g.thin = thin_flags_by_blocks(g.graph, g.boundary_multiplicity);
  return g;
}

InducedGraph admissible_distance_graph(const GasketGraph& g, const Region& u) {
  for (int v : u.vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.size()) {
      throw std::out_of_range("admissible_distance_graph: region vertex outside gasket");
    }
  }
  return induced_subgraph(g.graph, u.vertices);
}

namespace {

bool touches(const GasketGraph& g, int v, int loop) {
  const auto& m = g.loop_membership[static_cast<std::size_t>(v)];
  return std::find(m.begin(), m.end(), loop) != m.end();
}

const InterfaceLoop& loop_of(const GasketGraph& g, int loop_id) {
  if (!g.clusters) throw std::logic_error("gasket has no loops");
  const auto& cs = *g.clusters;
  if (loop_id < 0 || static_cast<std::size_t>(loop_id) >= cs.loops.size() ||
      cs.loops[static_cast<std::size_t>(loop_id)].cluster != g.cluster) {
    throw std::invalid_argument("loop does not bound this gasket");
  }
  return cs.loops[static_cast<std::size_t>(loop_id)];
}

// Maximal cyclic runs [first, last] of consecutive loop edges on `site`.
std::vector<std::pair<std::size_t, std::size_t>> visit_runs(const InterfaceLoop& loop, int site) {
  const std::size_t m = loop.edges.size();
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < m; ++i) {
    if (loop.edges[i].site != site) continue;
    if (loop.edges[(i + m - 1) % m].site == site) continue;
    std::size_t j = i;
    while (loop.edges[(j + 1) % m].site == site && (j + 1) % m != i) j = (j + 1) % m;
    runs.emplace_back(i, j);
  }
  if (runs.empty() && m > 0 && loop.edges[0].site == site) runs.emplace_back(0, m - 1);
  return runs;
}

struct Arc {
  std::vector<Point2> points;
  std::vector<DualEdge> edges;
};

// Loop corners from the end of run `from` to the start of run `to`.
Arc loop_arc(const InterfaceLoop& loop, std::size_t from_last, std::size_t to_first) {
  const std::size_t m = loop.edges.size();
  Arc arc;
  std::size_t i = (from_last + 1) % m;
  arc.points.push_back(loop.polygon[i]);
  while (i != to_first) {
    arc.edges.push_back(loop.edges[i]);
    i = (i + 1) % m;
    arc.points.push_back(loop.polygon[i]);
  }
  return arc;
}

// Winding numbers of a closed polygon at lattice rows y = r sqrt(3)/2. Each
// row stores its crossings sorted by x with the winding of the ray to the
// right of each crossing, so a query is a binary search.
class RowWinding {
 public:
  explicit RowWinding(const std::vector<Point2>& polygon) {
    const double h = std::sqrt(3.0) / 2.0;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0; i < m; ++i) {
      Point2 a = polygon[i], b = polygon[(i + 1) % m];
      if (a.y == b.y) continue;
      const int sign = b.y > a.y ? 1 : -1;
      const double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
      for (int r = static_cast<int>(std::ceil(lo / h)); r * h < hi; ++r) {
        const double y = r * h;
        if (y < lo) continue;
        const double x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
        rows_[r].push_back({x, sign});
      }
    }
    for (auto& [r, cs] : rows_) {
      std::sort(cs.begin(), cs.end(), [](const Crossing& p, const Crossing& q) { return p.x < q.x; });
      int acc = 0;
      for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        acc += it->sign;
        it->sign = acc;
      }
    }
  }

  int operator()(Point2 p) const {
    const int r = static_cast<int>(std::lround(p.y / (std::sqrt(3.0) / 2.0)));
    auto row = rows_.find(r);
    if (row == rows_.end()) return 0;
    const auto& cs = row->second;
    auto it = std::upper_bound(cs.begin(), cs.end(), p.x, [](double x, const Crossing& c) { return x < c.x; });
    return it == cs.end() ? 0 : it->sign;
  }

 private:
  struct Crossing {
    double x;
    int sign;  // after the suffix pass: winding of the ray starting at x
  };
  std::map<int, std::vector<Crossing>> rows_;
};

}  // namespace

std::vector<int> contact_vertices(const GasketGraph& g, int loop_a, int loop_b) {
  const auto& la = loop_of(g, loop_a);
  loop_of(g, loop_b);
  std::vector<int> out;
  std::vector<bool> seen(g.size(), false);
  for (const DualEdge& e : la.edges) {
    int v = g.local(e.site);
    if (v < 0 || seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = true;
    if (touches(g, v, loop_b)) out.push_back(v);
  }
  return out;
}

Region region_between(const GasketGraph& g, int loop_a, int loop_b, int x, int y, ArcOrder order) {
  const auto& la = loop_of(g, loop_a);
  const auto& lb = loop_of(g, loop_b);
  for (int v : {x, y}) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.size() || !touches(g, v, loop_a) || !touches(g, v, loop_b)) {
      throw std::invalid_argument("region_between: not a contact vertex of both loops");
    }
  }
  Region region;
  region.loops = {loop_a, loop_b};
  region.marked = {x, y};
  if (x == y) {
    region.vertices = {x};
    region.marked = {x};
    return region;
  }
  const TriDisk& disk = *g.clusters->lattice;
  // Arcs from x to y along loop_a; if they only bound the outside, the
  // pocket lies on the arcs from y to x.
  for (auto [from, to] : {std::pair{x, y}, std::pair{y, x}}) {
    if (from == y && order == ArcOrder::as_given) break;
    const int sx = g.sites[static_cast<std::size_t>(from)], sy = g.sites[static_cast<std::size_t>(to)];

    struct Candidate {
      double area;
      std::vector<Point2> polygon;
      std::vector<DualEdge> edges;
    };
    std::vector<Candidate> candidates;
    auto xa = visit_runs(la, sx), ya = visit_runs(la, sy);
    auto xb = visit_runs(lb, sx), yb = visit_runs(lb, sy);
    for (auto rx : xa) {
      for (auto ry : ya) {
        Arc a1 = loop_arc(la, rx.second, ry.first);
        for (auto qy : yb) {
          for (auto qx : xb) {
            Arc a2 = loop_arc(lb, qy.second, qx.first);
            Candidate c;
            c.polygon = a1.points;
            c.polygon.insert(c.polygon.end(), a2.points.begin(), a2.points.end());
            c.edges = a1.edges;
            c.edges.insert(c.edges.end(), a2.edges.begin(), a2.edges.end());
            c.area = signed_area(c.polygon);
            if (c.area > 0.0) candidates.push_back(std::move(c));
          }
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.area < b.area; });

    for (const Candidate& c : candidates) {
      // The arcs carry the cluster on their left; flood the cluster from the
      // arcs' open sides without passing x or y. A valid choice of arcs keeps
      // the flood inside the polygon.
      const RowWinding winding(c.polygon);
      std::vector<bool> seen(g.size(), false);
      seen[static_cast<std::size_t>(x)] = seen[static_cast<std::size_t>(y)] = true;
      std::deque<int> queue;
      bool valid = true;
      auto visit = [&](int v) {
        if (seen[static_cast<std::size_t>(v)]) return;
        seen[static_cast<std::size_t>(v)] = true;
        if (winding(g.graph.position(v)) == 0) valid = false;
        queue.push_back(v);
      };
      for (const DualEdge& e : c.edges) {
        int closed = disk.neighbor(static_cast<std::size_t>(e.site), e.dir);
        if (closed >= 0 && winding(disk.position(static_cast<std::size_t>(closed))) != 0) {
          valid = false;
        }
        visit(g.local(e.site));
        if (!valid) break;
      }
      while (valid && !queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& arc : g.graph.arcs(v)) {
          visit(arc.to);
          if (!valid) break;
        }
      }
      if (!valid) continue;
      for (std::size_t v = 0; v < g.size(); ++v) {
        if (seen[v]) region.vertices.push_back(static_cast<int>(v));
      }
      return region;
    }
  }
  throw std::runtime_error("region_between: the loop arcs do not bound a region");
}

Separation separation_points(const GasketGraph& g, const Region& u, int x, int y) {
  if (x == y) throw std::invalid_argument("separation_points: x == y");
  if (!u.contains(x) || !u.contains(y)) throw std::invalid_argument("separation_points: endpoint outside region");
  InducedGraph sub = admissible_distance_graph(g, u);
  int lx = sub.from_parent[static_cast<std::size_t>(x)], ly = sub.from_parent[static_cast<std::size_t>(y)];
  Separation s;
  if (sub.graph.adjacent(lx, ly)) {
    s.size = kUnboundedCut;
    return s;
  }
  for (int v : minimum_vertex_cut(sub.graph, lx, ly)) s.cut.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
  s.size = static_cast<int>(s.cut.size());
  return s;
}

}  // namespace clem
