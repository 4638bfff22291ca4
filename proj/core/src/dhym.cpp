#include "slag/dhym.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "slag/error.hpp"

namespace slag {

double theta_operator(const std::vector<double>& lambda) {
  double s = 0.0;
  for (double l : lambda) {
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidInput, "eigenvalues must be finite");
    s += std::atan(l);
  }
  return s;
}

double solve_symmetric(double thetahat, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  if (!(thetahat >= 0.0 && thetahat < n * std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::PhaseOutOfRange, "thetahat must lie in [0, n pi / 2)");
  }
  return std::tan(thetahat / n);
}

double large_phase_error(const std::vector<double>& lambda) {
  double inv = 0.0;
  for (double l : lambda) {
    if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveEigenvalue, "large-phase limit needs lambda_i > 0");
    inv += 1.0 / l;
  }
  const double n = static_cast<double>(lambda.size());
  return std::abs(theta_operator(lambda) - (n * std::numbers::pi / 2.0 - inv));
}

double large_volume_error(const std::vector<double>& lambda) {
  double s = 0.0;
  for (double l : lambda) s += l;
  return std::abs(theta_operator(lambda) - s);
}

LimitErrors limit_compare(const std::vector<double>& lambda) {
  LimitErrors out;
  try {
    out.large_phase = large_phase_error(lambda);
  } catch (const Error&) {
    out.large_phase = std::numeric_limits<double>::quiet_NaN();
  }
  out.large_volume = large_volume_error(lambda);
  return out;
}

bool obstruction_predicate(std::complex<double> z_v, std::complex<double> z_x) {
  if (z_x == std::complex<double>(0.0, 0.0)) throw Error(ErrorCode::ZeroDenominator, "Z_X vanishes");
  return (z_v / z_x).imag() > 0.0;
}

}  // namespace slag
