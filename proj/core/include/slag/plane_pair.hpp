#pragma once

#include <Eigen/Dense>
#include <vector>

#include "slag/random.hpp"

namespace slag {

/// Two graded Lagrangian planes frame_a R^n and frame_b R^n in C^n.
struct LagrangianPlanePair {
  int n = 0;
  Eigen::MatrixXcd frame_a;
  Eigen::MatrixXcd frame_b;
  double theta_a = 0.0;
  double theta_b = 0.0;
};

inline constexpr double kTransverseTol = 1e-9;
inline constexpr double kDegreeTol = 1e-6;

/// Throws InvalidInput unless both frames are n x n and unitary to 1e-12.
void validate_frames(const LagrangianPlanePair& pair);

/// validate_frames, plus each theta agrees with arg det(frame) mod pi.
void validate(const LagrangianPlanePair& pair);

/// Angles phi_i in (0, pi), ascending, with frame_b R^n equal to
/// diag(e^{i phi}) R^n after a unitary change of coordinates taking
/// frame_a R^n to R^n.
std::vector<double> characterizing_angles(const LagrangianPlanePair& pair);

/// (sum phi + theta_a - theta_b) / pi before rounding.
double floer_degree_value(const LagrangianPlanePair& pair);
int floer_degree(const LagrangianPlanePair& pair);

LagrangianPlanePair swapped(const LagrangianPlanePair& pair);

/// mu(a, b) + mu(b, a) == n, evaluated on the actually swapped pair.
bool degree_duality_check(const LagrangianPlanePair& pair);

/// 2 * sum(interior) + sum(boundary) + sum(corner_excess) + n
int index_from_zeros(const std::vector<int>& interior, const std::vector<int>& boundary,
                     const std::vector<int>& corner_excess, int n);

/// frame_a = I, frame_b = diag(e^{i phi}); theta_a, theta_b as given.
LagrangianPlanePair standard_pair(const std::vector<double>& phi, double theta_a, double theta_b);

/// Haar-distributed unitary (QR of a complex Gaussian matrix, phase-fixed).
Eigen::MatrixXcd random_unitary(int n, Pcg32& rng);
Eigen::MatrixXd random_orthogonal(int n, Pcg32& rng);

/// Random transverse pair with consistent gradings.  theta_a is drawn from
/// the admissible lifts of arg det(frame_a) near zero, theta_b is chosen so
/// the degree is an integer; with almost_calibrated both phases are kept in
/// (-pi/2, pi/2).
LagrangianPlanePair random_graded_pair(int n, Pcg32& rng, bool almost_calibrated = false);

}  // namespace slag
