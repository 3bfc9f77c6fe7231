#include "clem/loewner.hpp"

#include <cmath>
#include <stdexcept>

#include "clem/rng.hpp"

namespace clem {

DriverSpec DriverSpec::sle(double kappa, std::uint64_t seed) {
  DriverSpec s;
  s.kind = DriverKind::sle;
  s.kappa = kappa;
  s.seed = seed;
  return s;
}

DriverSpec DriverSpec::sle_rho(double kappa, std::vector<ForcePoint> points, std::uint64_t seed) {
  DriverSpec s;
  s.kind = DriverKind::sle_rho;
  s.kappa = kappa;
  s.seed = seed;
  s.force_points = std::move(points);
  return s;
}

namespace {

constexpr std::uint64_t kBrownianStream = 0x6272776e;  // "brwn"

void check_grid(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("sample_driver: need dt > 0 and horizon > 0");
  }
}

// Force-point evolution. The separation D_i = W - V_i is advanced through
// Z_i = D_i^2, whose SDE
//   dZ_i = 2 sqrt(kappa) D_i dB + (2 rho_i + 4 + kappa + 2 D_i sum_{j != i} rho_j / D_j) dt
// has no singularity at D_i = 0. W takes its drift from the new separations
// (implicit in D), and V_i = W - D_i is recorded with the unfloored separation.
void sample_with_force_points(const DriverSpec& spec, std::size_t steps, double dt,
                              LoewnerDriver& out) {
  const std::size_t m = spec.force_points.size();
  const double sk = std::sqrt(spec.kappa);
  const double tol = kCollisionFactor * dt;
  std::vector<double> v(m), d(m);
  std::vector<int> sign(m);
  std::vector<bool> collided(m, false), departed(m, false);
  out.force_paths.assign(m, {});
  out.force_weights.resize(m);
  out.collision_step.assign(m, std::nullopt);
  double w = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const ForcePoint& fp = spec.force_points[i];
    out.force_weights[i] = fp.weight;
    if (fp.side != 0) {
      sign[i] = fp.side > 0 ? -1 : 1;  // D = W - V < 0 for a point on the right
      v[i] = -sign[i] * kInfinitesimalOffset * dt;
    } else {
      if (fp.position == 0.0) throw std::invalid_argument("force point at 0 needs a side");
      v[i] = fp.position;
      sign[i] = fp.position > 0.0 ? -1 : 1;
      departed[i] = true;
    }
    d[i] = w - v[i];
    out.force_paths[i].push_back(v[i]);
  }
  out.values.push_back(w);
  out.times.push_back(0.0);

  std::vector<double> d_eff(m), d_true(m);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double db = std::sqrt(dt) * standard_normal(spec.seed, kBrownianStream, k);
    for (std::size_t i = 0; i < m; ++i) {
      double coupling = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i && d[j] != 0.0) coupling += spec.force_points[j].weight / d[j];
      }
      double z = d[i] * d[i] + 2.0 * sk * d[i] * db +
                 (2.0 * spec.force_points[i].weight + 4.0 + spec.kappa + 2.0 * d[i] * coupling) * dt;
      double mag = z > 0.0 ? std::sqrt(z) : 0.0;
      if (mag >= tol) departed[i] = true;
      if (departed[i] && mag < tol && !collided[i]) {
        collided[i] = true;
        out.collision_step[i] = k;
        out.collided_weight += spec.force_points[i].weight;
      }
      d_true[i] = sign[i] * mag;
      // The drift uses a separation floored at the collision scale so that the
      // implicit update stays bounded after a (non-terminal) collision.
      d_eff[i] = sign[i] * std::max(mag, collided[i] ? std::sqrt(dt) : tol);
    }
    double drift = 0.0;
    for (std::size_t i = 0; i < m; ++i) drift += spec.force_points[i].weight / d_eff[i];
    w += sk * db + drift * dt;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = w - d_true[i];
      d[i] = d_eff[i];
      out.force_paths[i].push_back(v[i]);
    }
    out.values.push_back(w);
    out.times.push_back(static_cast<double>(k) * dt);
    if (out.collided_weight <= -2.0) {
      out.stopped = true;
      return;
    }
  }
}

}  // namespace

LoewnerDriver sample_driver(const DriverSpec& spec, double horizon, double dt) {
  check_grid(horizon, dt);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  LoewnerDriver out;
  out.kind = spec.kind;
  out.kappa = spec.kappa;
  out.dt = dt;
  out.times.reserve(steps + 1);
  out.values.reserve(steps + 1);

  switch (spec.kind) {
    case DriverKind::deterministic:
      for (std::size_t k = 0; k <= steps; ++k) {
        double t = static_cast<double>(k) * dt;
        out.times.push_back(t);
        out.values.push_back(spec.function ? spec.function(t) : 0.0);
      }
      break;
    case DriverKind::sle: {
      if (!(spec.kappa > 0.0)) throw std::invalid_argument("sle driver needs kappa > 0");
      double w = 0.0;
      out.times.push_back(0.0);
      out.values.push_back(0.0);
      const double scale = std::sqrt(spec.kappa * dt);
      for (std::size_t k = 1; k <= steps; ++k) {
        w += scale * standard_normal(spec.seed, kBrownianStream, k);
        out.times.push_back(static_cast<double>(k) * dt);
        out.values.push_back(w);
      }
      break;
    }
    case DriverKind::sle_rho:
      if (!(spec.kappa > 0.0)) throw std::invalid_argument("sle_rho driver needs kappa > 0");
      sample_with_force_points(spec, steps, dt, out);
      break;
  }
  for (double x : out.values) {
    if (!std::isfinite(x)) throw std::overflow_error("sample_driver: non-finite driver value");
  }
  return out;
}

std::complex<double> forward_slit_map(std::complex<double> z, double u, double dt) {
  std::complex<double> a = z - u;
  std::complex<double> s = std::sqrt(a * a + 4.0 * dt);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() * a.real() < 0.0)) s = -s;
  return u + s;
}

std::complex<double> inverse_slit_map(std::complex<double> w, double u, double dt) {
  std::complex<double> a = w - u;
  std::complex<double> s = std::sqrt(a * a - 4.0 * dt);
  // Pick the root in the closed upper half-plane; on the real axis the root
  // keeps the sign of w - u.
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() * a.real() < 0.0)) s = -s;
  return u + s;
}

SleTrace trace(const LoewnerDriver& driver, std::size_t stride) {
  if (driver.times.size() < 1 || driver.times.size() != driver.values.size()) {
    throw std::invalid_argument("trace: malformed driver");
  }
  if (stride == 0) stride = 1;
  SleTrace out;
  out.dt = driver.dt;
  out.kappa = driver.kappa;
  out.points.emplace_back(0.0, 0.0);
  out.times.push_back(0.0);
  const std::size_t steps = driver.steps();
  for (std::size_t k = 1; k <= steps; ++k) {
    if (k % stride != 0 && k != steps) continue;
    std::complex<double> z(driver.values[k], 0.0);
    for (std::size_t j = k; j >= 1; --j) {
      z = inverse_slit_map(z, driver.values[j], driver.dt);
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::overflow_error("trace: non-finite tip position");
    }
    if (z.imag() < 0.0) z.imag(0.0);
    out.points.push_back(z);
    out.times.push_back(driver.times[k]);
  }
  return out;
}

}  // namespace clem
