#pragma once

#include <complex>
#include <vector>

namespace slag {

struct LawlorOptions {
  double abs_tol = 1e-10;  // quadrature target for the angle/area integrals
  double y_max_units = 1e3;  // profile truncation, in units of min a_k^{-1/2}
};

struct LawlorNeck {
  int n = 0;
  std::vector<double> a;
  std::vector<double> phi;
  double area = 0.0;  // A
};

/// phi_k = a_k * int dx / ((1 + a_k x^2) sqrt P),  A = int dx / (2 sqrt P)
/// with P(x) = (prod(1 + a_k x^2) - 1) / x^2.
LawlorNeck angles_and_area(const std::vector<double>& a, const LawlorOptions& opts = {});

struct InvertReport {
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> jacobian_diagonal;  // d phi_k / d log a_k (k < n) and d log A / d log a_n
};

/// Damped Newton in log a on (phi_1..phi_{n-1}, log A), central-difference
/// Jacobian, started from the symmetric point scaled to the target A.
std::vector<double> invert(const std::vector<double>& phi, double area,
                           const LawlorOptions& opts = {}, InvertReport* report = nullptr);

/// Evaluator for z_k(y) = e^{i psi_k(y)} sqrt(1/a_k + y^2).
class NeckProfile {
 public:
  explicit NeckProfile(LawlorNeck neck, const LawlorOptions& opts = {});

  const LawlorNeck& neck() const { return neck_; }
  double y_max() const { return y_max_; }

  double P(double x) const;
  double psi(int k, double y) const;
  double dpsi(int k, double y) const;
  std::vector<std::complex<double>> z(double y) const;
  std::vector<std::complex<double>> dz(double y) const;

  /// Liouville potential along a profile curve relative to its value on the
  /// Pi_0 end: int_{-inf}^y (1/2) sum_k Im(conj(z_k) z_k') x_k^2 dt.
  double potential(double y, const std::vector<double>& xhat) const;

 private:
  void check_range(double y) const;
  double psi_tail(int k, double y_abs) const;  // a_k int_{y_abs}^inf dx / ((1+a_k x^2) sqrt P)

  LawlorNeck neck_;
  LawlorOptions opts_;
  std::vector<double> e_;  // elementary symmetric polynomials e_1..e_n of a
  double y_max_ = 0.0;
};

/// Lagrangian angle of the neck at (z_k(y) xhat_k), reduced mod pi into
/// (-pi/2, pi/2].
double profile_phase(const NeckProfile& profile, double y, const std::vector<double>& xhat);

struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::vector<double> log_r;
  std::vector<double> log_dev;
};

/// Slope of log(potential deviation from the asymptotic plane) against
/// log|y| over a dyadic range of large |y| on the Pi_0 end.
DecayFit decay_exponent(const NeckProfile& profile, double max_residual = 0.05);

struct PotentialGap {
  std::vector<double> g;
  double max_rel_dev = 0.0;  // max_k |g_k - A| / A
};

/// g_k = int (1/2) Im(conj(z_k) z_k') dy over the whole line; the tails go
/// through y = 1/u.
PotentialGap potential_gap(const NeckProfile& profile);

}  // namespace slag
