#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace clem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(Point2 p, Point2 a, Point2 b);
/// Distance between segments [a, b] and [c, d].
double segment_segment_distance(Point2 a, Point2 b, Point2 c, Point2 d);
/// Shoelace signed area; positive for counterclockwise polygons.
double signed_area(std::span<const Point2> polygon);
/// Winding number of a closed polygon around p (p must not lie on it).
int winding_number(std::span<const Point2> polygon, Point2 p);
/// True when the polyline's non-adjacent segments never meet.
bool is_simple_polyline(std::span<const Point2> pts);

}  // namespace clem
