#pragma once

#include <complex>
#include <vector>

namespace slag {

/// Sum of arctan(lambda_i), principal branches.
double theta_operator(const std::vector<double>& lambda);

/// tan(thetahat / n): the constant solution of theta_operator = thetahat.
double solve_symmetric(double thetahat, int n);

struct LimitErrors {
  double large_phase = 0.0;   // |Theta - (n pi/2 - sum 1/lambda)|; NaN if some lambda <= 0
  double large_volume = 0.0;  // |Theta - sum lambda|
};

LimitErrors limit_compare(const std::vector<double>& lambda);

/// Throws NonPositiveEigenvalue unless every entry is positive.
double large_phase_error(const std::vector<double>& lambda);
double large_volume_error(const std::vector<double>& lambda);

/// Im(Z_V / Z_X) > 0.
bool obstruction_predicate(std::complex<double> z_v, std::complex<double> z_x);

}  // namespace slag
