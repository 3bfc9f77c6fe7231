#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace clem {

/// A force point of SLE_kappa(rho). `side` = +1 / -1 places the point
/// infinitesimally to the right / left of the starting driver value
/// (0+ / 0-); side = 0 uses `position` as an ordinary real position.
struct ForcePoint {
  double position = 0.0;
  int side = 0;
  double weight = 0.0;
};

enum class DriverKind { deterministic, sle, sle_rho };

struct DriverSpec {
  DriverKind kind = DriverKind::deterministic;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  std::vector<ForcePoint> force_points;
  /// Driver function for the deterministic kind; empty means U == 0.
  std::function<double(double)> function;

  static DriverSpec zero() { return {}; }
  static DriverSpec sle(double kappa, std::uint64_t seed);
  static DriverSpec sle_rho(double kappa, std::vector<ForcePoint> points, std::uint64_t seed);
};

struct LoewnerDriver {
  DriverKind kind = DriverKind::deterministic;
  double kappa = 0.0;
  double dt = 0.0;
  std::vector<double> times;   ///< t_0 = 0 < t_1 < ...
  std::vector<double> values;  ///< W(t_k)
  /// force_paths[i][k] = V^i(t_k); only filled for sle_rho.
  std::vector<std::vector<double>> force_paths;
  std::vector<double> force_weights;
  /// Step index at which each force point was first recorded as collided.
  std::vector<std::optional<std::size_t>> collision_step;
  bool stopped = false;  ///< continuation threshold reached before the horizon
  double collided_weight = 0.0;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

/// Collision tolerance multiplier: a force point is collided once
/// |V - W| < kCollisionFactor * dt.
inline constexpr double kCollisionFactor = 10.0;
/// Offset (in units of dt) used to resolve 0+ / 0- force points.
inline constexpr double kInfinitesimalOffset = 1e-9;

/// Euler-Maruyama driver on the uniform grid t_k = k*dt, k <= horizon/dt.
/// Deterministic for a fixed spec. For sle_rho the run is truncated at the
/// first step where the total weight of collided force points is <= -2.
LoewnerDriver sample_driver(const DriverSpec& spec, double horizon, double dt);

struct SleTrace {
  std::vector<std::complex<double>> points;  ///< points[0] = 0
  std::vector<double> times;
  double dt = 0.0;
  double kappa = 0.0;
};

/// Tip positions gamma(t_k) obtained by composing inverse vertical-slit maps
/// from step k back to step 1. Only every `stride`-th tip is computed (plus
/// the final one); each tip costs O(k). Throws std::overflow_error if the
/// composition leaves the finite range.
SleTrace trace(const LoewnerDriver& driver, std::size_t stride = 1);

/// Inverse of the one-step slit map with constant driver u over time dt:
/// maps H onto H minus the segment [u, u + 2i sqrt(dt)].
std::complex<double> inverse_slit_map(std::complex<double> w, double u, double dt);
/// Forward one-step map g(z) = u + sqrt((z-u)^2 + 4 dt).
std::complex<double> forward_slit_map(std::complex<double> z, double u, double dt);

}  // namespace clem
