#include "clem/geometry.hpp"

#include <algorithm>

namespace clem {

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  Point2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

namespace {

int orientation(Point2 a, Point2 b, Point2 c) {
  double v = cross(b - a, c - a);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min({point_segment_distance(a, c, d), point_segment_distance(b, c, d),
                   point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double signed_area(std::span<const Point2> polygon) {
  double s = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * s;
}

int winding_number(std::span<const Point2> polygon, Point2 p) {
  int wn = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = polygon[i], b = polygon[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0) ++wn;
    } else {
      if (b.y <= p.y && cross(b - a, p - a) < 0) --wn;
    }
  }
  return wn;
}

bool is_simple_polyline(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 2) return true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pts[i] == pts[i + 1]) return false;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 2; j + 1 < n; ++j) {
      if (segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1])) return false;
    }
  }
  // Adjacent segments may only share their common endpoint.
  for (std::size_t i = 0; i + 2 < n; ++i) {
    Point2 a = pts[i], b = pts[i + 1], c = pts[i + 2];
    if (orientation(a, b, c) == 0 && dot(b - a, c - b) < 0) return false;
  }
  return true;
}

}  // namespace clem
