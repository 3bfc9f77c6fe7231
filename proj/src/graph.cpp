#include "clem/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace clem {

int Graph::add_vertex(Point2 p) {
  pos_.push_back(p);
  adj_.emplace_back();
  return static_cast<int>(pos_.size()) - 1;
}

int Graph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("Graph: self-loops are not allowed");
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= size() || static_cast<std::size_t>(v) >= size()) {
    throw std::out_of_range("Graph: edge endpoint out of range");
  }
  int id = static_cast<int>(edges_.size());
  edges_.emplace_back(u, v);
  adj_[static_cast<std::size_t>(u)].push_back({v, id});
  adj_[static_cast<std::size_t>(v)].push_back({u, id});
  return id;
}

bool Graph::adjacent(int u, int v) const {
  for (const Arc& a : arcs(u)) {
    if (a.to == v) return true;
  }
  return false;
}

InducedGraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  InducedGraph out;
  out.from_parent.assign(g.size(), -1);
  for (int v : vertices) {
    if (out.from_parent[static_cast<std::size_t>(v)] != -1) continue;
    out.from_parent[static_cast<std::size_t>(v)] = out.graph.add_vertex(g.position(v));
    out.to_parent.push_back(v);
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(static_cast<int>(e));
    int lu = out.from_parent[static_cast<std::size_t>(u)], lv = out.from_parent[static_cast<std::size_t>(v)];
    if (lu >= 0 && lv >= 0) out.graph.add_edge(lu, lv);
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const auto& a : g.arcs(v)) {
      if (dist[static_cast<std::size_t>(a.to)] != kUnreachable) continue;
      dist[static_cast<std::size_t>(a.to)] = dist[static_cast<std::size_t>(v)] + 1;
      queue.push_back(a.to);
    }
  }
  return dist;
}

std::vector<int> components_without(const Graph& g, const std::vector<bool>& removed) {
  std::vector<int> label(g.size(), -1);
  int next = 0;
  std::vector<int> stack;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (label[s] != -1 || (!removed.empty() && removed[s])) continue;
    label[s] = next;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& a : g.arcs(v)) {
        auto t = static_cast<std::size_t>(a.to);
        if (label[t] != -1 || (!removed.empty() && removed[t])) continue;
        label[t] = next;
        stack.push_back(a.to);
      }
    }
    ++next;
  }
  return label;
}

std::vector<int> connected_components(const Graph& g) { return components_without(g, {}); }

namespace {

// Iterative DFS computing discovery times and lowpoints with edge-id based
// parent skipping (so parallel edges count as back edges).
struct LowpointWalk {
  std::vector<int> disc, low;
  std::vector<bool> articulation;
  std::vector<std::vector<int>> blocks;
};

LowpointWalk lowpoint_walk(const Graph& g, bool collect_blocks) {
  const std::size_t n = g.size();
  LowpointWalk w;
  w.disc.assign(n, -1);
  w.low.assign(n, 0);
  w.articulation.assign(n, false);
  std::vector<int> edge_stack;
  std::vector<bool> edge_seen(g.edge_count(), false);
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
    int children;
  };
  int timer = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (w.disc[root] != -1) continue;
    std::vector<Frame> stack{{static_cast<int>(root), -1, 0, 0}};
    w.disc[root] = w.low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto arcs = g.arcs(f.v);
      if (f.next < arcs.size()) {
        const auto a = arcs[f.next++];
        if (a.edge == f.parent_edge) continue;
        auto to = static_cast<std::size_t>(a.to);
        if (w.disc[to] == -1) {
          if (collect_blocks) {
            edge_stack.push_back(a.edge);
            edge_seen[static_cast<std::size_t>(a.edge)] = true;
          }
          ++f.children;
          w.disc[to] = w.low[to] = timer++;
          stack.push_back({a.to, a.edge, 0, 0});
        } else {
          w.low[static_cast<std::size_t>(f.v)] = std::min(w.low[static_cast<std::size_t>(f.v)], w.disc[to]);
          if (collect_blocks && !edge_seen[static_cast<std::size_t>(a.edge)] && w.disc[to] < w.disc[static_cast<std::size_t>(f.v)]) {
            edge_stack.push_back(a.edge);
            edge_seen[static_cast<std::size_t>(a.edge)] = true;
          }
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) w.articulation[static_cast<std::size_t>(done.v)] = true;
        continue;
      }
      Frame& parent = stack.back();
      auto pv = static_cast<std::size_t>(parent.v), cv = static_cast<std::size_t>(done.v);
      w.low[pv] = std::min(w.low[pv], w.low[cv]);
      if (w.low[cv] >= w.disc[pv]) {
        if (stack.size() > 1) w.articulation[pv] = true;
        if (collect_blocks) {
          std::vector<int> block;
          while (!edge_stack.empty()) {
            int e = edge_stack.back();
            edge_stack.pop_back();
            block.push_back(e);
            if (e == done.parent_edge) break;
          }
          std::sort(block.begin(), block.end());
          w.blocks.push_back(std::move(block));
        }
      }
    }
  }
  return w;
}

}  // namespace

std::vector<bool> articulation_points(const Graph& g) { return lowpoint_walk(g, false).articulation; }

std::vector<std::vector<int>> biconnected_blocks(const Graph& g) { return lowpoint_walk(g, true).blocks; }

namespace {

// Unit-capacity flow network with vertex splitting: v_in = 2v, v_out = 2v+1.
class SplitFlow {
 public:
  SplitFlow(const Graph& g, int s, int t) : n_(2 * g.size()), head_(n_, -1), s_(s), t_(t) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      int cap = (static_cast<int>(v) == s || static_cast<int>(v) == t) ? kInf : 1;
      add(2 * static_cast<int>(v), 2 * static_cast<int>(v) + 1, cap);
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.edge(static_cast<int>(e));
      // Unit capacity only matters for direct s-t edges; elsewhere the
      // vertex arcs must carry the minimum cut.
      const bool direct = (u == s && v == t) || (u == t && v == s);
      const int cap = direct ? 1 : kInf;
      add(2 * u + 1, 2 * v, cap);
      add(2 * v + 1, 2 * u, cap);
    }
  }

  int run(int cap) {
    int flow = 0;
    const int source = 2 * s_ + 1, sink = 2 * t_;
    while (cap <= 0 || flow < cap) {
      std::vector<int> via(n_, -1);
      std::vector<bool> seen(n_, false);
      std::deque<int> queue{source};
      seen[static_cast<std::size_t>(source)] = true;
      while (!queue.empty() && !seen[static_cast<std::size_t>(sink)]) {
        int x = queue.front();
        queue.pop_front();
        for (int e = head_[static_cast<std::size_t>(x)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
          int y = to_[static_cast<std::size_t>(e)];
          if (cap_[static_cast<std::size_t>(e)] <= 0 || seen[static_cast<std::size_t>(y)]) continue;
          seen[static_cast<std::size_t>(y)] = true;
          via[static_cast<std::size_t>(y)] = e;
          queue.push_back(y);
        }
      }
      if (!seen[static_cast<std::size_t>(sink)]) break;
      for (int y = sink; y != source;) {
        int e = via[static_cast<std::size_t>(y)];
        cap_[static_cast<std::size_t>(e)] -= 1;
        cap_[static_cast<std::size_t>(e ^ 1)] += 1;
        y = to_[static_cast<std::size_t>(e ^ 1)];
      }
      ++flow;
    }
    return flow;
  }

  /// Nodes reachable from the source in the residual graph.
  std::vector<bool> residual_reach() const {
    std::vector<bool> seen(n_, false);
    const int source = 2 * s_ + 1;
    std::deque<int> queue{source};
    seen[static_cast<std::size_t>(source)] = true;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int e = head_[static_cast<std::size_t>(x)]; e != -1; e = next_[static_cast<std::size_t>(e)]) {
        int y = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] <= 0 || seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
    return seen;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max() / 4;

  void add(int a, int b, int c) {
    to_.push_back(b);
    cap_.push_back(c);
    next_.push_back(head_[static_cast<std::size_t>(a)]);
    head_[static_cast<std::size_t>(a)] = static_cast<int>(to_.size()) - 1;
    to_.push_back(a);
    cap_.push_back(0);
    next_.push_back(head_[static_cast<std::size_t>(b)]);
    head_[static_cast<std::size_t>(b)] = static_cast<int>(to_.size()) - 1;
  }

  std::size_t n_;
  std::vector<int> head_, to_, cap_, next_;
  int s_, t_;
};

}  // namespace

int vertex_disjoint_paths(const Graph& g, int s, int t, int cap) {
  if (s == t) throw std::invalid_argument("vertex_disjoint_paths: s == t");
  SplitFlow flow(g, s, t);
  return flow.run(cap);
}

std::vector<int> minimum_vertex_cut(const Graph& g, int s, int t) {
  if (s == t || g.adjacent(s, t)) return {};
  SplitFlow flow(g, s, t);
  flow.run(0);
  auto reach = flow.residual_reach();
  std::vector<int> cut;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (static_cast<int>(v) == s || static_cast<int>(v) == t) continue;
    if (reach[2 * v] && !reach[2 * v + 1]) cut.push_back(static_cast<int>(v));
  }
  return cut;
}

}  // namespace clem
