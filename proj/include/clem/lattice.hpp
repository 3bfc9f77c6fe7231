#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "clem/geometry.hpp"

namespace clem {

/// Axial coordinates on the triangular lattice; the Euclidean embedding is
/// (q + r/2, r * sqrt(3)/2), so nearest neighbours are at distance 1.
struct Axial {
  int q = 0;
  int r = 0;
  friend bool operator==(Axial, Axial) = default;
};

/// The six neighbour offsets in counterclockwise order starting east.
inline constexpr std::array<Axial, 6> kDirections{
    Axial{1, 0}, Axial{0, 1}, Axial{-1, 1}, Axial{-1, 0}, Axial{0, -1}, Axial{1, -1}};

Point2 embed(Axial a);

/// Triangular-lattice sites within Euclidean distance `radius` of the origin.
/// Each site is drawn as a hexagon of the dual (honeycomb) lattice; corner k
/// of a hexagon is the centre of the triangle spanned by the site and its
/// neighbours in directions k and k+1.
class TriDisk {
 public:
  explicit TriDisk(int radius);

  int radius() const { return radius_; }
  std::size_t size() const { return sites_.size(); }
  Axial site(std::size_t i) const { return sites_[i]; }
  Point2 position(std::size_t i) const { return embed(sites_[i]); }
  const std::vector<Axial>& sites() const { return sites_; }

  /// Index of (q, r), or -1 when the point lies outside the disk.
  int index(Axial a) const;
  /// Neighbour of site i in direction k, or -1 when outside the disk.
  int neighbor(std::size_t i, int k) const { return neighbors_[6 * i + static_cast<std::size_t>(k)]; }

  /// Hexagon corner k of site i in Euclidean coordinates.
  Point2 corner(std::size_t i, int k) const;
  /// Integer key of hexagon corner k of site i; equal keys mean the same
  /// honeycomb vertex.
  std::int64_t corner_key(std::size_t i, int k) const;

 private:
  int radius_;
  std::vector<Axial> sites_;
  std::vector<int> grid_;  // (q + 2R) * (2R + 1) + (r + R) -> index or -1
  std::vector<int> neighbors_;
};

/// Shared, cached disk of the given radius.
std::shared_ptr<const TriDisk> tri_disk(int radius);

}  // namespace clem
