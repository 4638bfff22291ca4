#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slag/curve.hpp"

namespace slag {

enum class Integrator { Euler, Heun };

struct FlowOptions {
  Integrator integrator = Integrator::Euler;  // Heun: two-stage strong-stability-preserving
  double cfl = 0.2;                  // dt <= cfl * (min edge length)^2
  double resample_ratio = 3.0;       // uniform mode: max/min edge length trigger
  double singularity = 0.1;          // halt when |kappa| * spacing exceeds this
  double thetahat = 0.0;
  bool transport_potential = true;   // df/dt = -theta - p V^x, then reprojected
  bool project_exactness = true;     // cylinder: cancel Liouville drift by a vertical shift
  bool track_lobes = false;          // figure-eight diagnostics

  // Curvature-adaptive spacing (0 disables): target edge length
  // clamp(adapt_c / |kappa|, h_min, h_max).
  double adapt_c = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
};

struct FlowRecord {
  double t = 0.0;
  double sup_theta = 0.0;
  double inf_theta = 0.0;
  double theta_l2 = 0.0;   // int (theta - thetahat)^2 dvol
  double meanH_l2 = 0.0;   // int |H|^2 dvol
  double volume = 0.0;
  double solomon = 0.0;    // NaN without a reference curve
  double lobe1 = 0.0;      // NaN unless lobes are tracked
  double lobe2 = 0.0;
  double dissipation = 0.0;  // int (theta - thetahat) sin(theta - thetahat) dvol
  double liouville = 0.0;    // closed-loop integral of lambda
  double max_kappa = 0.0;
  double max_turning = 0.0;  // max |kappa| * spacing
  double potential_defect = 0.0;
  std::size_t samples = 0;
};

struct FlowState {
  GradedCurve curve;  // single closed component
  double time = 0.0;
  std::vector<double> edge_theta;  // lifted angle of edge i -> i+1
  std::vector<FlowRecord> history;
  std::optional<GradedCurve> reference;  // L0 for the Solomon diagnostic
  double potential_defect = 0.0;
  int resamples = 0;
  int lobe_sign = 0;  // orientation sign of the lobe reported as lobe1
};

FlowState make_flow_state(GradedCurve curve, std::optional<GradedCurve> reference = {});

/// One explicit step of the turning-angle scheme: vertex i moves by
/// dt * alpha_i / (m_i sin alpha_i) * (T_i - T_{i-1}), which is the
/// curvature vector alpha_i / m_i along the bisector normal, scaled so the
/// edge angles obey an exact discrete heat equation.
FlowState csf_step(const FlowState& state, double dt, const FlowOptions& opts = {});

/// Largest stable step for the current sampling.
double max_stable_dt(const FlowState& state, const FlowOptions& opts = {});

/// Advances by total time dt_total with CFL-limited sub-steps; throws
/// SingularityReached like csf_step.
FlowState advance(const FlowState& state, double dt_total, const FlowOptions& opts = {});

FlowRecord measure(const FlowState& state, const FlowOptions& opts = {});
void record(FlowState& state, const FlowOptions& opts = {});

/// max_i |(theta_i(t+dt) - theta_i(t)) / dt - Laplacian theta_i| for vertex
/// angles on the same sampling.
double theta_heat_residual(const FlowState& before, const FlowState& after);

struct Monotonicity {
  bool sup_theta_nonincreasing = true;
  bool inf_theta_nondecreasing = true;
  bool volume_nonincreasing = true;
  bool solomon_nonincreasing = true;
  bool dsdt_ok = true;
  double max_dsdt_rel_err = 0.0;
  std::size_t steps = 0;
};

/// Checks the history pairwise with per-step slack; dS/dt is compared with
/// the trapezoid average of -dissipation when Solomon values are present.
Monotonicity monotonicity_monitor(const FlowState& state, double slack = 1e-8, double dsdt_rel_tol = 1e-2);

struct EnergyIdentity {
  double lhs = 0.0;  // int_0^T int |H|^2
  double rhs = 0.0;  // (1/2)(int theta^2 |_0 - int theta^2 |_T)
  double rel_err = 0.0;
};

EnergyIdentity energy_identity_check(const FlowState& state);

struct RunResult {
  FlowState state;
  bool singular = false;
  double singular_time = 0.0;
};

/// Records at t = 0 and every record_dt until t_end or a singularity.
RunResult run_flow(FlowState state, double t_end, double record_dt, const FlowOptions& opts = {});

/// Regular N-gon with the same area as the circle of radius r0.
GradedCurve make_circle(double r0, std::size_t n);

/// Figure-eight x = cos s (1 + b cos s), p = sin s cos s (1 + b cos s),
/// with b and a uniform scale chosen so the lobe areas are (a1, a2).
GradedCurve make_figure_eight(double a1, double a2, std::size_t n);

struct Crossing {
  std::size_t i = 0, j = 0;  // edges i -> i+1 and j -> j+1, i < j
  double si = 0.0, sj = 0.0;  // positions along the edges
  cplx point;
};

std::optional<Crossing> find_self_intersection(const GradedCurve& curve);

/// Signed shoelace areas of the two loops cut at the crossing.
std::pair<double, double> lobe_areas(const GradedCurve& curve, const Crossing& c);

struct FigureEightReport {
  RunResult run;
  double a1 = 0.0, a2 = 0.0;
  double lobe1_final = 0.0, lobe2_final = 0.0;
  bool smaller_monotone = true;
  bool larger_monotone = true;
  bool symmetric = false;
  double kappa_initial = 0.0;
  double kappa_final = 0.0;
  std::vector<double> lobe1_rate;  // measured d(lobe1)/dt between records
};

FigureEightReport figure_eight_run(double a1, double a2, std::size_t n, const FlowOptions& opts,
                                   double record_dt, double t_max);

}  // namespace slag
