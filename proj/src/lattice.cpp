#include "clem/lattice.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace clem {

namespace {
constexpr double kSqrt3Over2 = 0.86602540378443864676;
}

Point2 embed(Axial a) { return {a.q + 0.5 * a.r, kSqrt3Over2 * a.r}; }

TriDisk::TriDisk(int radius) : radius_(radius) {
  if (radius < 1) throw std::invalid_argument("TriDisk radius must be >= 1");
  const int R = radius;
  const int width = 2 * R + 1;
  grid_.assign(static_cast<std::size_t>(4 * R + 1) * width, -1);
  const double r2 = static_cast<double>(R) * R;
  for (int r = -R; r <= R; ++r) {
    for (int q = -2 * R; q <= 2 * R; ++q) {
      Point2 p = embed({q, r});
      if (p.x * p.x + p.y * p.y <= r2 + 1e-9) {
        grid_[static_cast<std::size_t>(q + 2 * R) * width + (r + R)] = static_cast<int>(sites_.size());
        sites_.push_back({q, r});
      }
    }
  }
  neighbors_.resize(6 * sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    for (int k = 0; k < 6; ++k) {
      Axial a{sites_[i].q + kDirections[k].q, sites_[i].r + kDirections[k].r};
      neighbors_[6 * i + k] = index(a);
    }
  }
}

int TriDisk::index(Axial a) const {
  const int R = radius_;
  if (a.r < -R || a.r > R || a.q < -2 * R || a.q > 2 * R) return -1;
  return grid_[static_cast<std::size_t>(a.q + 2 * R) * (2 * R + 1) + (a.r + R)];
}

Point2 TriDisk::corner(std::size_t i, int k) const {
  Axial s = sites_[i];
  Axial d1 = kDirections[k % 6], d2 = kDirections[(k + 1) % 6];
  Point2 c = embed(s);
  Point2 off = embed({d1.q + d2.q, d1.r + d2.r});
  return {c.x + off.x / 3.0, c.y + off.y / 3.0};
}

std::int64_t TriDisk::corner_key(std::size_t i, int k) const {
  Axial s = sites_[i];
  Axial d1 = kDirections[k % 6], d2 = kDirections[(k + 1) % 6];
  std::int64_t a = 3LL * s.q + d1.q + d2.q;
  std::int64_t b = 3LL * s.r + d1.r + d2.r;
  return (a << 32) ^ (b & 0xffffffffLL);
}

std::shared_ptr<const TriDisk> tri_disk(int radius) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const TriDisk>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(radius);
  if (it != cache.end()) return it->second;
  auto disk = std::make_shared<const TriDisk>(radius);
  cache.emplace(radius, disk);
  return disk;
}

}  // namespace clem
