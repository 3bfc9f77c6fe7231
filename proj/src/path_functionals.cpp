#include "clem/path_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace clem {

double PathFunctional::a_eps() const {
  return kind == FunctionalKind::neighborhood_area ? 4.0 * std::numbers::pi * eps * eps : 1.0;
}

double PathFunctional::c_ser() const { return kind == FunctionalKind::neighborhood_area ? 2.0 : 1.0; }

const char* PathFunctional::name() const {
  return kind == FunctionalKind::neighborhood_area ? "area" : "count";
}

PlanarPath::PlanarPath(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("PlanarPath: no vertices");
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    double len = distance(vertices_[i - 1], vertices_[i]);
    if (len == 0.0) throw std::invalid_argument("PlanarPath: repeated consecutive vertex");
    cumulative_.push_back(cumulative_.back() + len);
  }
  simple_ = is_simple_polyline(vertices_);
}

Point2 PlanarPath::at(double s) const {
  if (s <= 0.0) return vertices_.front();
  if (s >= length()) return vertices_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  double t = (s - cumulative_[k]) / (cumulative_[k + 1] - cumulative_[k]);
  return vertices_[k] + t * (vertices_[k + 1] - vertices_[k]);
}

PlanarPath PlanarPath::prefix(double s) const {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < vertices_.size() && cumulative_[i] < s; ++i) pts.push_back(vertices_[i]);
  if (pts.empty()) return PlanarPath({vertices_.front()});
  Point2 end = at(s);
  if (!(end == pts.back())) pts.push_back(end);
  return PlanarPath(std::move(pts));
}

std::vector<Point2> PlanarPath::samples(double pitch, std::vector<double>* arclength) const {
  std::vector<Point2> out{vertices_.front()};
  if (arclength) *arclength = {0.0};
  for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
    const double a = cumulative_[k], b = cumulative_[k + 1];
    for (double m = std::floor(a / pitch) + 1.0; m * pitch < b; m += 1.0) {
      double s = m * pitch;
      out.push_back(vertices_[k] + ((s - a) / (b - a)) * (vertices_[k + 1] - vertices_[k]));
      if (arclength) arclength->push_back(s);
    }
    out.push_back(vertices_[k + 1]);
    if (arclength) arclength->push_back(b);
  }
  return out;
}

namespace {

// Multiset of grid cells whose centres lie within eps of the inserted
// segments; supports removal for backtracking searches.
class CellCover {
 public:
  explicit CellCover(double eps) : eps_(eps), h_(eps * kAreaPitchFactor) {}

  void add(Point2 a, Point2 b, int delta) {
    const auto i0 = static_cast<std::int64_t>(std::floor((std::min(a.x, b.x) - eps_) / h_));
    const auto i1 = static_cast<std::int64_t>(std::floor((std::max(a.x, b.x) + eps_) / h_));
    const auto j0 = static_cast<std::int64_t>(std::floor((std::min(a.y, b.y) - eps_) / h_));
    const auto j1 = static_cast<std::int64_t>(std::floor((std::max(a.y, b.y) + eps_) / h_));
    for (std::int64_t i = i0; i <= i1; ++i) {
      for (std::int64_t j = j0; j <= j1; ++j) {
        Point2 c{(static_cast<double>(i) + 0.5) * h_, (static_cast<double>(j) + 0.5) * h_};
        if (point_segment_distance(c, a, b) > eps_) continue;
        std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) ^ (static_cast<std::uint64_t>(j) & 0xffffffffULL);
        int& count = cells_[key];
        if (count == 0 && delta > 0) ++live_;
        count += delta;
        if (count == 0) {
          --live_;
          cells_.erase(key);
        }
      }
    }
  }

  double area() const { return static_cast<double>(live_) * h_ * h_; }

 private:
  double eps_, h_;
  std::unordered_map<std::uint64_t, int> cells_;
  std::size_t live_ = 0;
};

bool separated(Point2 a, Point2 b, double eps) { return distance(a, b) >= eps * (1.0 - 1e-12); }

}  // namespace

int max_separated_chain(std::span<const Point2> points, double eps) {
  // Exact longest chain by dynamic programming; greedy earliest choice is
  // not optimal for point sequences.
  std::vector<int> best(points.size(), 1);
  int answer = points.empty() ? 0 : 1;
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] + 1 > best[j] && separated(points[i], points[j], eps)) best[j] = best[i] + 1;
    }
    answer = std::max(answer, best[j]);
  }
  return answer;
}

double evaluate(const PathFunctional& f, const PlanarPath& path) {
  if (!path.simple()) throw std::invalid_argument("evaluate: path is not simple");
  if (!(f.eps > 0.0)) throw std::invalid_argument("evaluate: eps must be positive");
  if (f.kind == FunctionalKind::eps_count) {
    return max_separated_chain(path.samples(f.eps * kCountPitchFactor), f.eps);
  }
  CellCover cover(f.eps);
  const auto& v = path.vertices();
  if (v.size() == 1) cover.add(v[0], v[0], 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) cover.add(v[i], v[i + 1], 1);
  return cover.area();
}

double evaluate_lattice_path(const PathFunctional& f, std::span<const Point2> vertices) {
  if (vertices.empty()) throw std::invalid_argument("evaluate_lattice_path: empty path");
  if (f.kind == FunctionalKind::eps_count) return max_separated_chain(vertices, f.eps);
  CellCover cover(f.eps);
  if (vertices.size() == 1) cover.add(vertices[0], vertices[0], 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) cover.add(vertices[i], vertices[i + 1], 1);
  return cover.area();
}

namespace {

// Functional value of a growing lattice path with push / pop.
class IncrementalValue {
 public:
  explicit IncrementalValue(const PathFunctional& f) : f_(f), cover_(f.eps) {}

  void push(Point2 p) {
    if (f_.kind == FunctionalKind::eps_count) {
      int b = 1;
      for (std::size_t i = 0; i < points_.size(); ++i) {
        if (best_[i] + 1 > b && separated(points_[i], p, f_.eps)) b = best_[i] + 1;
      }
      best_.push_back(b);
      prefix_max_.push_back(std::max(prefix_max_.empty() ? 0 : prefix_max_.back(), b));
    } else {
      cover_.add(points_.empty() ? p : points_.back(), p, 1);
    }
    points_.push_back(p);
  }

  void pop() {
    Point2 p = points_.back();
    points_.pop_back();
    if (f_.kind == FunctionalKind::eps_count) {
      best_.pop_back();
      prefix_max_.pop_back();
    } else {
      cover_.add(points_.empty() ? p : points_.back(), p, -1);
    }
  }

  double value() const {
    if (f_.kind == FunctionalKind::eps_count) return prefix_max_.empty() ? 0.0 : prefix_max_.back();
    return cover_.area();
  }

 private:
  PathFunctional f_;
  CellCover cover_;
  std::vector<Point2> points_;
  std::vector<int> best_, prefix_max_;
};

}  // namespace

GeodesicValue approx_geodesic_metric(const GasketGraph& g, const Region& u, const PathFunctional& f, int x,
                                     int y, std::size_t node_budget) {
  if (!u.contains(x) || !u.contains(y)) throw std::invalid_argument("approx_geodesic_metric: endpoint outside U");
  InducedGraph sub = admissible_distance_graph(g, u);
  const Graph& h = sub.graph;
  const int lx = sub.from_parent[static_cast<std::size_t>(x)], ly = sub.from_parent[static_cast<std::size_t>(y)];
  GeodesicValue out;
  if (lx == ly) {
    Point2 p = h.position(lx);
    out.value = evaluate_lattice_path(f, std::span<const Point2>(&p, 1));
    out.path = {x};
    return out;
  }
  std::vector<int> to_y = bfs_distances(h, ly);
  if (to_y[static_cast<std::size_t>(lx)] == kUnreachable) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  // Seed the bound with a shortest hop path.
  std::vector<int> best_path{lx};
  while (best_path.back() != ly) {
    int v = best_path.back();
    for (const auto& a : h.arcs(v)) {
      if (to_y[static_cast<std::size_t>(a.to)] == to_y[static_cast<std::size_t>(v)] - 1) {
        best_path.push_back(a.to);
        break;
      }
    }
  }
  auto path_value = [&](const std::vector<int>& p) {
    std::vector<Point2> pts;
    for (int v : p) pts.push_back(h.position(v));
    return evaluate_lattice_path(f, pts);
  };
  double best = path_value(best_path);

  // Depth-first search over self-avoiding paths, neighbours tried in order
  // of hop distance to y.
  struct Frame {
    int v;
    std::vector<int> order;
    std::size_t next = 0;
  };
  IncrementalValue value(f);
  std::vector<bool> on_path(h.size(), false);
  std::vector<Frame> stack;
  std::vector<int> current;
  auto enter = [&](int v) {
    value.push(h.position(v));
    on_path[static_cast<std::size_t>(v)] = true;
    current.push_back(v);
    Frame fr{v, {}, 0};
    for (const auto& a : h.arcs(v)) fr.order.push_back(a.to);
    std::sort(fr.order.begin(), fr.order.end(), [&](int a, int b) {
      return to_y[static_cast<std::size_t>(a)] < to_y[static_cast<std::size_t>(b)];
    });
    fr.order.erase(std::unique(fr.order.begin(), fr.order.end()), fr.order.end());
    stack.push_back(std::move(fr));
  };
  auto leave = [&]() {
    value.pop();
    on_path[static_cast<std::size_t>(stack.back().v)] = false;
    current.pop_back();
    stack.pop_back();
  };
  std::size_t nodes = 0;
  bool exhausted = false;
  enter(lx);
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.next >= fr.order.size()) {
      leave();
      continue;
    }
    int w = fr.order[fr.next++];
    if (on_path[static_cast<std::size_t>(w)] || to_y[static_cast<std::size_t>(w)] == kUnreachable) continue;
    if (++nodes > node_budget) {
      exhausted = true;
      break;
    }
    enter(w);
    if (value.value() >= best) {
      leave();
      continue;
    }
    if (w == ly) {
      best = value.value();
      best_path = current;
      leave();
    }
  }
  out.value = best;
  out.exact = !exhausted;
  for (int v : best_path) out.path.push_back(sub.to_parent[static_cast<std::size_t>(v)]);
  return out;
}

double approximate_midpoint(const PathFunctional& f, const PlanarPath& path) {
  const double total = evaluate(f, path);
  if (total <= 2.0 * f.a_eps()) return 0.0;
  std::vector<double> arclength;
  auto pts = path.samples(f.eps * (f.kind == FunctionalKind::eps_count ? kCountPitchFactor : kAreaPitchFactor),
                          &arclength);
  IncrementalValue value(f);
  double previous = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    value.push(pts[j]);
    double v = value.value();
    if (v >= total / 2.0) {
      if (j > 0 && total / 2.0 - previous < v - total / 2.0) return arclength[j - 1];
      return arclength[j];
    }
    previous = v;
  }
  return path.length();
}

double diameter(std::span<const Point2> points) {
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) d = std::max(d, distance(points[i], points[j]));
  }
  return d;
}

PlanarPath random_simple_polyline(CounterRng& rng, int segments) {
  std::vector<Point2> pts{{0.0, 0.0}};
  double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < segments; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < 20 && !placed; ++attempt) {
      double turn = heading + 0.8 * rng.normal();
      Point2 next = pts.back() + Point2{std::cos(turn), std::sin(turn)};
      placed = true;
      for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        if (segment_segment_distance(pts[i], pts[i + 1], pts.back(), next) < 1e-6) {
          placed = false;
          break;
        }
      }
      if (placed) {
        pts.push_back(next);
        heading = turn;
      }
    }
    if (!placed) break;
  }
  return PlanarPath(std::move(pts));
}

GoodSchemeReport good_scheme_check(const PathFunctional& f, double r, std::size_t samples, std::uint64_t seed) {
  if (!(r > 0.0)) throw std::invalid_argument("good_scheme_check: r must be positive");
  GoodSchemeReport report;
  report.bound = f.kind == FunctionalKind::neighborhood_area ? 2.0 * r * f.eps : r / f.eps;
  report.min_value = std::numeric_limits<double>::infinity();
  CounterRng rng(seed, tag_hash("good-scheme"));
  for (std::size_t k = 0; k < samples; ++k) {
    PlanarPath raw = random_simple_polyline(rng, 1 + static_cast<int>(rng.below(8)));
    double diam = diameter(raw.vertices());
    double scale = r * (1.0 + 0.5 * rng.uniform()) / diam;
    std::vector<Point2> pts;
    for (Point2 p : raw.vertices()) pts.push_back(scale * p);
    double v = evaluate(f, PlanarPath(std::move(pts)));
    report.min_value = std::min(report.min_value, v);
    if (v < report.bound) report.pass = false;
    ++report.paths;
  }
  return report;
}

}  // namespace clem
