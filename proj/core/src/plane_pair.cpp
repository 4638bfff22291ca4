#include "slag/plane_pair.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "slag/error.hpp"

namespace slag {
namespace {

constexpr double kPi = std::numbers::pi;

double distance_mod(double a, double period) {
  const double r = std::remainder(a, period);
  return std::abs(r);
}

}  // namespace

void validate_frames(const LagrangianPlanePair& pair) {
  const int n = pair.n;
  if (n < 1 || pair.frame_a.rows() != n || pair.frame_a.cols() != n || pair.frame_b.rows() != n ||
      pair.frame_b.cols() != n) {
    throw Error(ErrorCode::InvalidInput, "frames must be n x n");
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (const auto* frame : {&pair.frame_a, &pair.frame_b}) {
    if ((frame->adjoint() * *frame - id).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error(ErrorCode::InvalidInput, "frame is not unitary to 1e-12");
    }
  }
}

void validate(const LagrangianPlanePair& pair) {
  validate_frames(pair);
  if (distance_mod(pair.theta_a - std::arg(pair.frame_a.determinant()), kPi) > 1e-9 ||
      distance_mod(pair.theta_b - std::arg(pair.frame_b.determinant()), kPi) > 1e-9) {
    throw Error(ErrorCode::InvalidInput, "grading differs from arg det(frame) mod pi");
  }
}

std::vector<double> characterizing_angles(const LagrangianPlanePair& pair) {
  validate_frames(pair);
  const Eigen::MatrixXcd u = pair.frame_a.adjoint() * pair.frame_b;
  const Eigen::MatrixXcd uut = u * u.transpose();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(uut, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidInput, "eigen-decomposition of U U^T failed");
  }
  std::vector<double> phi;
  phi.reserve(static_cast<std::size_t>(pair.n));
  for (const auto& ev : solver.eigenvalues()) {
    double arg = std::arg(ev);
    if (distance_mod(arg, 2.0 * kPi) < kTransverseTol) {
      throw Error(ErrorCode::NotTransverse, "planes intersect non-trivially");
    }
    if (arg < 0.0) arg += 2.0 * kPi;
    phi.push_back(0.5 * arg);
  }
  std::sort(phi.begin(), phi.end());
  return phi;
}

double floer_degree_value(const LagrangianPlanePair& pair) {
  const auto phi = characterizing_angles(pair);
  const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
  return (sum + pair.theta_a - pair.theta_b) / kPi;
}

int floer_degree(const LagrangianPlanePair& pair) {
  const double mu = floer_degree_value(pair);
  const double rounded = std::round(mu);
  if (std::abs(mu - rounded) > kDegreeTol) {
    throw Error(ErrorCode::NonIntegerDegree,
                "degree " + std::to_string(mu) + " is not an integer; grading data inconsistent");
  }
  return static_cast<int>(rounded);
}

LagrangianPlanePair swapped(const LagrangianPlanePair& pair) {
  return {pair.n, pair.frame_b, pair.frame_a, pair.theta_b, pair.theta_a};
}

bool degree_duality_check(const LagrangianPlanePair& pair) {
  return floer_degree(pair) + floer_degree(swapped(pair)) == pair.n;
}

int index_from_zeros(const std::vector<int>& interior, const std::vector<int>& boundary,
                     const std::vector<int>& corner_excess, int n) {
  const int si = std::accumulate(interior.begin(), interior.end(), 0);
  const int sb = std::accumulate(boundary.begin(), boundary.end(), 0);
  const int sc = std::accumulate(corner_excess.begin(), corner_excess.end(), 0);
  return 2 * si + sb + sc + n;
}

LagrangianPlanePair standard_pair(const std::vector<double>& phi, double theta_a, double theta_b) {
  const int n = static_cast<int>(phi.size());
  LagrangianPlanePair pair;
  pair.n = n;
  pair.frame_a = Eigen::MatrixXcd::Identity(n, n);
  pair.frame_b = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) pair.frame_b(i, i) = std::polar(1.0, phi[static_cast<std::size_t>(i)]);
  pair.theta_a = theta_a;
  pair.theta_b = theta_b;
  return pair;
}

Eigen::MatrixXcd random_unitary(int n, Pcg32& rng) {
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = {rng.normal(), rng.normal()};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const auto d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Eigen::MatrixXd random_orthogonal(int n, Pcg32& rng) {
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

LagrangianPlanePair random_graded_pair(int n, Pcg32& rng, bool almost_calibrated) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    LagrangianPlanePair pair;
    pair.n = n;
    pair.frame_a = random_unitary(n, rng);
    pair.frame_b = random_unitary(n, rng);
    // arg det is only defined mod pi on the plane; move to a representative
    const double det_a = std::arg(pair.frame_a.determinant());
    const double det_b = std::arg(pair.frame_b.determinant());
    if (almost_calibrated) {
      pair.theta_a = std::remainder(det_a, kPi);
      pair.theta_b = std::remainder(det_b, kPi);
      if (std::abs(pair.theta_a) > 0.5 * kPi - 1e-6 || std::abs(pair.theta_b) > 0.5 * kPi - 1e-6) {
        continue;
      }
    } else {
      pair.theta_a = det_a + kPi * static_cast<double>(rng.uniform_int(-2, 2));
      pair.theta_b = det_b + kPi * static_cast<double>(rng.uniform_int(-2, 2));
    }
    try {
      characterizing_angles(pair);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotTransverse) continue;
      throw;
    }
    return pair;
  }
  throw Error(ErrorCode::NoConvergence, "could not draw a transverse pair");
}

}  // namespace slag
