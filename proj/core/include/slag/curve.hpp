#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace slag {

using cplx = std::complex<double>;

enum class AmbientKind { Cylinder, Plane };

/// Flat cylinder R/cZ x R (w = x + ip) or the plane.  Omega = dw,
/// omega = dx ^ dp and the Liouville form is lambda = -p dx in both cases.
struct Ambient {
  AmbientKind kind = AmbientKind::Cylinder;
  double circumference = 2.0 * std::numbers::pi;

  static Ambient cylinder(double c = 2.0 * std::numbers::pi) { return {AmbientKind::Cylinder, c}; }
  static Ambient plane() { return {AmbientKind::Plane, 0.0}; }
};

struct Sample {
  double x = 0.0;
  double p = 0.0;
  double theta = 0.0;  // graded Lagrangian angle (continuous lift)
  double f = 0.0;      // Lagrangian potential
  int component = 0;
};

/// Polyline samples of an immersed curve.  Samples of one component are
/// stored contiguously; on a closed curve each component wraps.  On the
/// cylinder x may be stored unreduced; segment displacements are always
/// taken as the minimal image, so consecutive samples must be closer than
/// half the circumference.
struct GradedCurve {
  Ambient ambient;
  bool closed = true;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
};

struct ComponentRange {
  int id = 0;
  std::size_t begin = 0;
  std::size_t end = 0;  // one past last
  std::size_t size() const { return end - begin; }
};

struct Segment {
  std::size_t from = 0;
  std::size_t to = 0;
  cplx dw;  // displacement dx + i dp (minimal image on the cylinder)
};

std::vector<ComponentRange> components(const GradedCurve& curve);

/// All polyline segments in storage order; closing segments included for
/// closed curves.
std::vector<Segment> segments(const GradedCurve& curve);

cplx displacement(const Ambient& ambient, const Sample& a, const Sample& b);

/// Integral of lambda = -p dx along the straight segment a -> b.
double liouville_increment(const Ambient& ambient, const Sample& a, const Sample& b);

/// Continuous lift of the tangent angle.  The branch at the first sample of
/// each component is the one nearest the stored theta there.
std::vector<double> phase_angles(const GradedCurve& curve);

/// Returns a copy with theta replaced by phase_angles.
GradedCurve with_phase(GradedCurve curve);

cplx central_charge(const GradedCurve& curve);
cplx central_charge(const GradedCurve& curve, int component);

/// Winding number of a closed cylinder component around the core circle.
int winding_number(const GradedCurve& curve, int component);

double polyline_length(const GradedCurve& curve);

/// Arclength, Richardson-extrapolated from the full and every-other-sample
/// polylines when every component has an even sample count.
double volume(const GradedCurve& curve);

/// Re of the integral of e^{-i theta} Omega (trapezoid in the stored theta).
double j_volume(const GradedCurve& curve);
cplx j_volume_complex(const GradedCurve& curve);

bool almost_calibrated_check(const GradedCurve& curve, double eps);

struct VolumeBound {
  double lhs = 0.0;  // Vol(L)
  double rhs = 0.0;  // (1/sin eps) * integral of Re Omega
  bool ok = false;
};

VolumeBound volume_bound_check(const GradedCurve& curve, double eps);

double theta_oscillation(const GradedCurve& curve);

/// Rebuilds f by cumulative Liouville integration, keeping the stored value
/// at the first sample of every component as its anchor.
void recompute_potential(GradedCurve& curve);

/// Sets the anchor of each component (indexed by position in components())
/// and rebuilds f.
void assign_potential(GradedCurve& curve, const std::vector<double>& anchors);

/// Closed-loop integral of lambda over one component.
double liouville_circulation(const GradedCurve& curve, int component);

/// Largest |f[j] - f[i] - integral of lambda| over segments (closing
/// segments included).
double exactness_defect(const GradedCurve& curve);

struct GraphOptions {
  std::size_t samples = 2048;
  double circumference = 2.0 * std::numbers::pi;
  double mean_tol = 1e-10;
  double x0 = 0.0;
};

/// Closed graph p = q(x) over the cylinder core, uniformly sampled in x.
/// theta = arctan q'; f solves df = lambda with f(x0) = anchor.  dq may be
/// empty, in which case q' is taken by a fourth-order central difference.
GradedCurve make_graph_curve(const std::function<double(double)>& q, double anchor_f,
                             const GraphOptions& opts = {},
                             const std::function<double(double)>& dq = {});

/// Appends the components of `other` (relabelled after this curve's ids).
GradedCurve merge_components(const GradedCurve& a, const GradedCurve& b);

}  // namespace slag
