#include "slag/lawlor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "slag/error.hpp"
#include "slag/quadrature.hpp"

namespace slag {
namespace {

constexpr double kPi = std::numbers::pi;

void check_parameters(const std::vector<double>& a) {
  if (a.size() < 3) {
    throw Error(ErrorCode::DimensionTooSmall, "Lawlor necks need n >= 3, got " + std::to_string(a.size()));
  }
  for (double v : a) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::NonPositiveParameter, "a_k must be finite and positive");
    }
  }
}

// e_1..e_n of a; expanding prod(1 + a_k x^2) - 1 this way avoids the
// cancellation of evaluating the product near x = 0.
std::vector<double> elementary_symmetric(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (double v : a) {
    for (std::size_t m = n; m >= 1; --m) e[m] += v * e[m - 1];
  }
  return e;
}

// P(x) = sum_m e_m x^{2m-2}
double eval_P(const std::vector<double>& e, double x) {
  const double x2 = x * x;
  double acc = 0.0;
  for (std::size_t m = e.size() - 1; m >= 1; --m) acc = acc * x2 + e[m];
  return acc;
}

// Q(u) = u^{2n-2} P(1/u) = sum_m e_m u^{2(n-m)}
double eval_Q(const std::vector<double>& e, double u) {
  const double u2 = u * u;
  double acc = 0.0;
  for (std::size_t m = 1; m < e.size(); ++m) acc = acc * u2 + e[m];
  return acc;
}

struct Integrals {
  std::vector<double> phi;
  double area = 0.0;
};

// Integrand of phi_k and A over [y, inf) for y >= 0; the piece beyond 1 is
// mapped by x = 1/u.
double half_line_phi(const std::vector<double>& e, double ak, int n, double y, const quad::Options& o) {
  auto near = [&](double x) { return ak / ((1.0 + ak * x * x) * std::sqrt(eval_P(e, x))); };
  auto far = [&](double u) {
    return ak * std::pow(u, n - 1) / ((u * u + ak) * std::sqrt(eval_Q(e, u)));
  };
  double total = 0.0;
  if (y < 1.0) {
    total += quad::integrate(near, y, 1.0, o).value;
    total += quad::integrate(far, 0.0, 1.0, o).value;
  } else {
    total += quad::integrate(far, 0.0, 1.0 / y, o).value;
  }
  return total;
}

double half_line_area(const std::vector<double>& e, int n, double y, const quad::Options& o) {
  auto near = [&](double x) { return 0.5 / std::sqrt(eval_P(e, x)); };
  auto far = [&](double u) { return 0.5 * std::pow(u, n - 3) / std::sqrt(eval_Q(e, u)); };
  double total = 0.0;
  if (y < 1.0) {
    total += quad::integrate(near, y, 1.0, o).value;
    total += quad::integrate(far, 0.0, 1.0, o).value;
  } else {
    total += quad::integrate(far, 0.0, 1.0 / y, o).value;
  }
  return total;
}

Integrals compute(const std::vector<double>& a, double abs_tol) {
  const int n = static_cast<int>(a.size());
  const auto e = elementary_symmetric(a);
  quad::Options o;
  o.abs_tol = 0.25 * abs_tol;
  o.max_intervals = 4000;
  Integrals out;
  out.phi.resize(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.phi[k] = 2.0 * half_line_phi(e, a[k], n, 0.0, o);
  out.area = 2.0 * half_line_area(e, n, 0.0, o);
  return out;
}

}  // namespace

LawlorNeck angles_and_area(const std::vector<double>& a, const LawlorOptions& opts) {
  check_parameters(a);
  const Integrals r = compute(a, opts.abs_tol);
  return {static_cast<int>(a.size()), a, r.phi, r.area};
}

std::vector<double> invert(const std::vector<double>& phi, double area, const LawlorOptions& opts,
                           InvertReport* report) {
  const int n = static_cast<int>(phi.size());
  if (n < 3) throw Error(ErrorCode::DimensionTooSmall, "Lawlor necks need n >= 3");
  const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
  if (std::abs(sum - kPi) > 1e-8) {
    throw Error(ErrorCode::AngleSumViolation, "sum of angles differs from pi by " + std::to_string(sum - kPi));
  }
  for (double v : phi) {
    if (!(v > 0.0 && v < kPi)) throw Error(ErrorCode::AngleSumViolation, "angles must lie in (0, pi)");
  }
  if (!(area > 0.0)) throw Error(ErrorCode::NonPositiveParameter, "A must be positive");

  // the residual has to resolve far below the 1e-10 stopping threshold
  const double tol = std::min(opts.abs_tol, 1e-13);
  auto residual = [&](const Eigen::VectorXd& s) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = std::exp(s[k]);
    const Integrals r = compute(a, tol);
    Eigen::VectorXd out(n);
    for (int k = 0; k + 1 < n; ++k) out[k] = r.phi[static_cast<std::size_t>(k)] - phi[static_cast<std::size_t>(k)];
    out[n - 1] = std::log(r.area) - std::log(area);
    return out;
  };

  const double a1 = compute(std::vector<double>(static_cast<std::size_t>(n), 1.0), tol).area;
  Eigen::VectorXd s = Eigen::VectorXd::Constant(n, std::log(a1 / area));
  Eigen::VectorXd r = residual(s);
  double norm = r.norm();
  const double h = 1e-5;
  Eigen::MatrixXd jac(n, n);
  int iter = 0;
  for (; iter < 100 && norm >= 1e-10; ++iter) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd sp = s, sm = s;
      sp[j] += h;
      sm[j] -= h;
      jac.col(j) = (residual(sp) - residual(sm)) / (2.0 * h);
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-r);
    double damping = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd trial = s + damping * step;
      const Eigen::VectorXd rt = residual(trial);
      if (rt.allFinite() && rt.norm() < norm) {
        s = trial;
        r = rt;
        norm = rt.norm();
        improved = true;
        break;
      }
      damping *= 0.5;
    }
    if (!improved) break;
  }
  if (norm >= 1e-10) {
    throw Error(ErrorCode::NoConvergence,
                "Newton stalled at residual " + std::to_string(norm) + " after " + std::to_string(iter) + " iterations");
  }
  if (report) {
    report->iterations = iter;
    report->residual = norm;
    report->jacobian_diagonal.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) report->jacobian_diagonal[static_cast<std::size_t>(k)] = jac(k, k);
  }
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = std::exp(s[k]);
  return a;
}

NeckProfile::NeckProfile(LawlorNeck neck, const LawlorOptions& opts)
    : neck_(std::move(neck)), opts_(opts) {
  check_parameters(neck_.a);
  if (neck_.phi.size() != neck_.a.size()) neck_ = angles_and_area(neck_.a, opts_);
  e_ = elementary_symmetric(neck_.a);
  const double amax = *std::max_element(neck_.a.begin(), neck_.a.end());
  y_max_ = opts_.y_max_units / std::sqrt(amax);
}

void NeckProfile::check_range(double y) const {
  if (!(std::abs(y) <= y_max_)) {
    throw Error(ErrorCode::OutOfRange, "|y| = " + std::to_string(std::abs(y)) + " exceeds y_max = " +
                                           std::to_string(y_max_));
  }
}

double NeckProfile::P(double x) const { return eval_P(e_, x); }

double NeckProfile::psi_tail(int k, double y_abs) const {
  quad::Options o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-13;
  o.max_intervals = 4000;
  return half_line_phi(e_, neck_.a[static_cast<std::size_t>(k)], neck_.n, y_abs, o);
}

double NeckProfile::psi(int k, double y) const {
  check_range(y);
  if (y <= 0.0) return psi_tail(k, -y);
  return neck_.phi[static_cast<std::size_t>(k)] - psi_tail(k, y);
}

double NeckProfile::dpsi(int k, double y) const {
  const double ak = neck_.a[static_cast<std::size_t>(k)];
  return ak / ((1.0 + ak * y * y) * std::sqrt(P(y)));
}

std::vector<std::complex<double>> NeckProfile::z(double y) const {
  std::vector<std::complex<double>> out(neck_.a.size());
  for (int k = 0; k < neck_.n; ++k) {
    const double r = std::sqrt(1.0 / neck_.a[static_cast<std::size_t>(k)] + y * y);
    out[static_cast<std::size_t>(k)] = std::polar(r, psi(k, y));
  }
  return out;
}

std::vector<std::complex<double>> NeckProfile::dz(double y) const {
  std::vector<std::complex<double>> out(neck_.a.size());
  for (int k = 0; k < neck_.n; ++k) {
    const double r = std::sqrt(1.0 / neck_.a[static_cast<std::size_t>(k)] + y * y);
    const std::complex<double> rot = std::polar(1.0, psi(k, y));
    out[static_cast<std::size_t>(k)] = rot * std::complex<double>(y / r, r * dpsi(k, y));
  }
  return out;
}

double NeckProfile::potential(double y, const std::vector<double>& xhat) const {
  check_range(y);
  // Im(conj(z_k) z_k') = r_k^2 psi_k'; on |t| > 1 the substitution t = 1/u
  // turns r_k^2 psi_k' dt into u^{n-3} / sqrt(Q(u)) du.
  quad::Options o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-13;
  o.max_intervals = 4000;
  const int n = neck_.n;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ak = neck_.a[static_cast<std::size_t>(k)];
    auto near = [&](double t) { return (1.0 / ak + t * t) * dpsi(k, t); };
    auto far = [&](double u) {
      return ((u * u + ak) / ak) * ak * std::pow(u, n - 1) / ((u * u + ak) * std::sqrt(eval_Q(e_, u))) / (u * u);
    };
    auto from = [&](double ya) {  // int_{ya}^inf, ya >= 0
      if (ya < 1.0) return quad::integrate(near, ya, 1.0, o).value + quad::integrate(far, 0.0, 1.0, o).value;
      return quad::integrate(far, 0.0, 1.0 / ya, o).value;
    };
    const double half = from(0.0);
    const double gk = y <= 0.0 ? from(-y) : 2.0 * half - from(y);
    const double w = xhat[static_cast<std::size_t>(k)];
    total += 0.5 * gk * w * w;
  }
  return total;
}

double profile_phase(const NeckProfile& profile, double y, const std::vector<double>& xhat) {
  const int n = profile.neck().n;
  if (static_cast<int>(xhat.size()) != n) throw Error(ErrorCode::InvalidInput, "xhat has wrong dimension");
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = xhat[static_cast<std::size_t>(k)];
  const double len = x.norm();
  if (!(len > 0.0)) throw Error(ErrorCode::InvalidInput, "xhat must be nonzero");
  x /= len;
  // orthonormal basis of the tangent space of the sphere at x
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const auto zv = profile.z(y);
  const auto dzv = profile.dz(y);
  Eigen::MatrixXcd frame(n, n);
  for (int k = 0; k < n; ++k) {
    frame(k, 0) = dzv[static_cast<std::size_t>(k)] * x[k];
    for (int j = 1; j < n; ++j) frame(k, j) = zv[static_cast<std::size_t>(k)] * q(k, j);
  }
  const double arg = std::arg(frame.determinant());
  double reduced = std::remainder(arg, kPi);
  if (reduced <= -0.5 * kPi) reduced += kPi;
  return reduced;
}

DecayFit decay_exponent(const NeckProfile& profile, double max_residual) {
  const auto& neck = profile.neck();
  const double amin = *std::min_element(neck.a.begin(), neck.a.end());
  const double y0 = 16.0 / std::sqrt(amin);
  std::vector<double> xhat(static_cast<std::size_t>(neck.n), 1.0 / std::sqrt(static_cast<double>(neck.n)));
  DecayFit fit;
  for (double y = y0; y <= profile.y_max(); y *= 2.0) {
    const double dev = profile.potential(-y, xhat);
    double r2 = 0.0;
    for (int k = 0; k < neck.n; ++k) {
      const double w = xhat[static_cast<std::size_t>(k)];
      r2 += (1.0 / neck.a[static_cast<std::size_t>(k)] + y * y) * w * w;
    }
    if (!(dev > 0.0)) break;
    fit.log_r.push_back(0.5 * std::log(r2));
    fit.log_dev.push_back(std::log(dev));
  }
  const std::size_t m = fit.log_r.size();
  if (m < 4) throw Error(ErrorCode::FitFailure, "dyadic range too short for a decay fit");
  const double mx = std::accumulate(fit.log_r.begin(), fit.log_r.end(), 0.0) / static_cast<double>(m);
  const double my = std::accumulate(fit.log_dev.begin(), fit.log_dev.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (fit.log_r[i] - mx) * (fit.log_r[i] - mx);
    sxy += (fit.log_r[i] - mx) * (fit.log_dev[i] - my);
  }
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = fit.log_dev[i] - (fit.intercept + fit.exponent * fit.log_r[i]);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(m));
  if (!(fit.residual <= max_residual)) {
    throw Error(ErrorCode::FitFailure, "log-log fit residual " + std::to_string(fit.residual));
  }
  return fit;
}

PotentialGap potential_gap(const NeckProfile& profile) {
  const auto& neck = profile.neck();
  const int n = neck.n;
  quad::Options o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-12;
  o.max_intervals = 8000;
  PotentialGap out;
  for (int k = 0; k < n; ++k) {
    const double ak = neck.a[static_cast<std::size_t>(k)];
    auto integrand = [&](double t) {
      // (1/2) Im(conj(z_k) z_k') = (1/2) r_k^2 psi_k'; even in t
      return 0.5 * (1.0 / ak + t * t) * profile.dpsi(k, t);
    };
    // [0, 1] directly, [1, inf) through t = 1/u; the substituted
    // integrand behaves like u^{n-3} at u = 0
    const auto inner = quad::integrate(integrand, 0.0, 1.0, o);
    const auto tail = quad::integrate([&](double u) { return integrand(1.0 / u) / (u * u); }, 0.0, 1.0, o);
    const double g = 2.0 * (inner.value + tail.value);
    if (!std::isfinite(g) || !tail.converged) {
      throw Error(ErrorCode::TailDivergence, "tail integral did not converge for coordinate " +
                                                 std::to_string(k));
    }
    out.g.push_back(g);
    out.max_rel_dev = std::max(out.max_rel_dev, std::abs(g - neck.area) / neck.area);
  }
  return out;
}

}  // namespace slag
