#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "slag/bordism.hpp"
#include "slag/curve.hpp"
#include "slag/stability.hpp"

namespace slag {

struct SolomonTerms {
  double potential_L = 0.0;   // int_L f_L Im(e^{-i thetahat} Omega)
  double potential_L0 = 0.0;  // int_L0 f_L0 Im(e^{-i thetahat} Omega)
  double bordism = 0.0;       // Im int_C lambda ^ e^{-i thetahat} Omega
};

struct SolomonEvaluation {
  double value = 0.0;  // potential_L - potential_L0 - bordism
  SolomonTerms terms;
  double thetahat = 0.0;
  double bordism_mass = 0.0;
  double bordism_max_abs_p = 0.0;
  /// Same bordism term through Stokes: (cos thetahat / 2)(oint_L p^2 dx - oint_L0 p^2 dx).
  double bordism_stokes = 0.0;
};

struct SolomonOptions {
  std::optional<double> thetahat;  // default arg Z(L0)
  BordismOptions bordism;
};

/// int_L f Im(e^{-i thetahat} dw), exact for piecewise-linear f and L.
double potential_term(const GradedCurve& curve, double thetahat);

/// (cos thetahat / 2) oint p^2 dx, exact on the polyline.
double stokes_primitive(const GradedCurve& curve, double thetahat);

SolomonEvaluation solomon_functional(const GradedCurve& L, const GradedCurve& L0, const SolomonOptions& opts = {});

/// Vertical Hamiltonian deformation by H(x, p) = h(x): p -> p - s h'(x) and
/// f transported by df/ds = h, re-integrated so the potential stays
/// discretely exact.
GradedCurve hamiltonian_deform(const GradedCurve& curve, const std::function<double(double)>& h,
                               const std::function<double(double)>& dh, double s);

struct FirstVariation {
  double fd = 0.0;        // (S(L_dt) - S(L_-dt)) / (2 dt)
  double analytic = 0.0;  // int_L h Im(e^{-i thetahat} Omega)
};

FirstVariation first_variation_check(const GradedCurve& L, const GradedCurve& L0,
                                     const std::function<double(double)>& h,
                                     const std::function<double(double)>& dh, double dt,
                                     std::optional<double> thetahat = {});

/// |S_L0(L) - S_L0p(L) - S_L0(L0p)| at a common thetahat (default arg Z(L0)).
double change_of_reference_check(const GradedCurve& L, const GradedCurve& L0, const GradedCurve& L0p,
                                 std::optional<double> thetahat = {});

struct ClusterInput {
  GradedCurve curve;
  double inf_f = 0.0;
  double sup_f = 0.0;
};

/// Range of the stored potential on a curve.
ClusterInput cluster_input(const GradedCurve& curve);

struct ClusterResult {
  ChargeChain chain;
  std::vector<std::vector<std::size_t>> blocks;  // indices into the input, per block
  double max_oscillation = 0.0;
  bool oscillation_ok = true;  // every block oscillation <= A
  bool ordered = true;         // chain clustering order holds
};

ClusterResult potential_cluster(const std::vector<ClusterInput>& components, double A);

struct BoundedPartOptions {
  std::optional<double> thetahat;  // default arg Z(L0)
  double cluster_A = 1e300;
  std::vector<double> shifts;      // per-block constants; default 7 * (i + 1)
  double eps = 0.1;                // almost-calibrated margin for the reported Floer bound
};

struct BoundedPartReport {
  double S = 0.0;
  double S_bar = 0.0;
  double gap = 0.0;  // |S - S_bar|
  double shift_residual = 0.0;
  double shifted_S = 0.0;
  double shifted_S_bar = 0.0;
  double predicted_shift = 0.0;  // sum_i c_i Im(e^{-i thetahat} Z_i)
  double homological_bound = 0.0;
  bool bound_ok = false;
  double floer_bound = 0.0;  // reported only
  double thetahat = 0.0;
  ClusterResult clusters;
};

/// Clusters the components of L, evaluates S and the elementary functional
/// against L0, and checks that S - S_bar is unchanged by per-block potential
/// shifts.
BoundedPartReport bounded_part_check(const std::vector<GradedCurve>& components, const GradedCurve& L0,
                                     const BoundedPartOptions& opts = {});

/// Union of several curves as one multi-component curve.
GradedCurve union_of(const std::vector<GradedCurve>& parts);

}  // namespace slag
