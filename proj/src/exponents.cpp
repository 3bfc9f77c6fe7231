#include "clem/exponents.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace clem {

double double_point_angle(double kappa) {
  return std::numbers::pi * (kappa - 2.0) / (2.0 - kappa / 2.0);
}

double double_point_dimension(double kappa_prime) {
  return 2.0 - (12.0 - kappa_prime) * (4.0 + kappa_prime) / (8.0 * kappa_prime);
}

double double_point_exponent(double kappa) {
  return (12.0 - kappa) * (4.0 + kappa) / (8.0 * kappa);
}

SleParameters make_parameters(double kappa) {
  if (!(kappa > 2.0 && kappa < 4.0)) {
    throw std::domain_error("kappa must lie in (2,4), got " + std::to_string(kappa));
  }
  SleParameters p;
  p.kappa = kappa;
  p.kappa_prime = 16.0 / kappa;
  p.lambda = std::numbers::pi / std::sqrt(kappa);
  p.chi = 2.0 / std::sqrt(kappa) - std::sqrt(kappa) / 2.0;
  p.theta_dbl = double_point_angle(kappa);
  p.d_sle = 1.0 + kappa / 8.0;
  p.d_dbl = double_point_dimension(p.kappa_prime);
  p.alpha4 = double_point_exponent(kappa);
  return p;
}

}  // namespace clem
