#pragma once

namespace clem {

/// SLE/CLE constants for a fixed kappa in (2,4). kappa_prime = 16/kappa is the
/// CLE parameter; with kappa = 8/3 this is the percolation case kappa' = 6.
struct SleParameters {
  double kappa = 0.0;
  double kappa_prime = 0.0;
  double lambda = 0.0;
  double chi = 0.0;
  double theta_dbl = 0.0;  ///< double point angle (radians)
  double d_sle = 0.0;      ///< dimension of SLE_kappa
  double d_dbl = 0.0;      ///< double point dimension of SLE_kappa'
  double alpha4 = 0.0;     ///< double point exponent of SLE_kappa
};

/// Throws std::domain_error unless 2 < kappa < 4.
SleParameters make_parameters(double kappa);

// The individual formulas, exposed for callers that sweep kappa.
double double_point_angle(double kappa);
double double_point_dimension(double kappa_prime);
double double_point_exponent(double kappa);

}  // namespace clem
