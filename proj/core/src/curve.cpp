#include "slag/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slag/error.hpp"

namespace slag {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double a) {
  // into (-pi, pi]
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

std::size_t next_index(const ComponentRange& r, std::size_t i, bool closed) {
  if (i + 1 < r.end) return i + 1;
  return closed ? r.begin : i;
}

}  // namespace

std::vector<ComponentRange> components(const GradedCurve& curve) {
  std::vector<ComponentRange> out;
  const auto& s = curve.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (out.empty() || s[i].component != out.back().id) {
      for (const auto& r : out) {
        if (r.id == s[i].component) {
          throw Error(ErrorCode::InvalidInput,
                      "component " + std::to_string(r.id) + " is not stored contiguously");
        }
      }
      out.push_back({s[i].component, i, i + 1});
    } else {
      out.back().end = i + 1;
    }
  }
  return out;
}

cplx displacement(const Ambient& ambient, const Sample& a, const Sample& b) {
  double dx = b.x - a.x;
  if (ambient.kind == AmbientKind::Cylinder) {
    dx = std::remainder(dx, ambient.circumference);
  }
  return {dx, b.p - a.p};
}

double liouville_increment(const Ambient& ambient, const Sample& a, const Sample& b) {
  const cplx d = displacement(ambient, a, b);
  return -0.5 * (a.p + b.p) * d.real();
}

std::vector<Segment> segments(const GradedCurve& curve) {
  std::vector<Segment> out;
  out.reserve(curve.size());
  for (const auto& r : components(curve)) {
    const std::size_t last = curve.closed ? r.end : r.end - 1;
    for (std::size_t i = r.begin; i < last; ++i) {
      const std::size_t j = next_index(r, i, curve.closed);
      if (j == i) continue;
      out.push_back({i, j, displacement(curve.ambient, curve.samples[i], curve.samples[j])});
    }
  }
  return out;
}

std::vector<double> phase_angles(const GradedCurve& curve) {
  const auto& s = curve.samples;
  std::vector<double> theta(s.size(), 0.0);
  for (const auto& r : components(curve)) {
    const std::size_t n = r.size();
    if (n < 2) throw Error(ErrorCode::InvalidInput, "component with fewer than two samples");
    // unit directions of the outgoing segment of every sample
    std::vector<cplx> dir(n);
    const std::size_t nseg = curve.closed ? n : n - 1;
    for (std::size_t k = 0; k < nseg; ++k) {
      const std::size_t i = r.begin + k;
      const std::size_t j = next_index(r, i, curve.closed);
      const cplx d = displacement(curve.ambient, s[i], s[j]);
      const double len = std::abs(d);
      if (!(len > 0.0)) {
        throw Error(ErrorCode::ZeroTangent, "coincident samples " + std::to_string(i) + ", " +
                                                std::to_string(j));
      }
      dir[k] = d / len;
    }
    // sample tangent: bisector of incoming and outgoing directions
    std::vector<double> raw(n);
    for (std::size_t k = 0; k < n; ++k) {
      cplx t;
      if (curve.closed) {
        t = dir[(k + n - 1) % n] + dir[k];
      } else if (k == 0) {
        t = dir[0];
      } else if (k == n - 1) {
        t = dir[n - 2];
      } else {
        t = dir[k - 1] + dir[k];
      }
      if (std::abs(t) < 1e-12) {
        throw Error(ErrorCode::LiftJump, "tangent reverses at sample " + std::to_string(r.begin + k));
      }
      raw[k] = std::arg(t);
    }
    double lift = raw[0] + 2.0 * kPi * std::round((s[r.begin].theta - raw[0]) / (2.0 * kPi));
    theta[r.begin] = lift;
    for (std::size_t k = 1; k < n; ++k) {
      const double step = wrap_pi(raw[k] - raw[k - 1]);
      if (std::abs(step) >= kPi - 1e-9) {
        throw Error(ErrorCode::LiftJump, "adjacent tangent jump reaches pi at sample " +
                                             std::to_string(r.begin + k));
      }
      lift += step;
      theta[r.begin + k] = lift;
    }
    if (curve.closed) {
      const double step = wrap_pi(raw[0] - raw[n - 1]);
      const double rotation = (lift + step - theta[r.begin]) / (2.0 * kPi);
      if (std::abs(rotation) > 0.5) {
        throw Error(ErrorCode::LiftJump, "component " + std::to_string(r.id) +
                                             " has nonzero rotation number; not gradable");
      }
    }
  }
  return theta;
}

GradedCurve with_phase(GradedCurve curve) {
  const auto theta = phase_angles(curve);
  for (std::size_t i = 0; i < theta.size(); ++i) curve.samples[i].theta = theta[i];
  return curve;
}

cplx central_charge(const GradedCurve& curve) {
  if (!curve.closed) throw Error(ErrorCode::OpenCurve, "central charge needs a closed curve");
  cplx z = 0.0;
  for (const auto& seg : segments(curve)) z += seg.dw;
  return z;
}

cplx central_charge(const GradedCurve& curve, int component) {
  if (!curve.closed) throw Error(ErrorCode::OpenCurve, "central charge needs a closed curve");
  cplx z = 0.0;
  for (const auto& seg : segments(curve)) {
    if (curve.samples[seg.from].component == component) z += seg.dw;
  }
  return z;
}

int winding_number(const GradedCurve& curve, int component) {
  if (curve.ambient.kind != AmbientKind::Cylinder) return 0;
  const cplx z = central_charge(curve, component);
  return static_cast<int>(std::lround(z.real() / curve.ambient.circumference));
}

double polyline_length(const GradedCurve& curve) {
  double len = 0.0;
  for (const auto& seg : segments(curve)) len += std::abs(seg.dw);
  return len;
}

double volume(const GradedCurve& curve) {
  const double fine = polyline_length(curve);
  const auto comps = components(curve);
  const bool even = std::all_of(comps.begin(), comps.end(), [&](const ComponentRange& r) {
    return r.size() % 2 == 0 && r.size() >= 8;
  });
  if (!curve.closed || !even) return fine;
  double coarse = 0.0;
  for (const auto& r : comps) {
    for (std::size_t i = r.begin; i < r.end; i += 2) {
      const std::size_t j = (i + 2 < r.end) ? i + 2 : r.begin;
      coarse += std::abs(displacement(curve.ambient, curve.samples[i], curve.samples[j]));
    }
  }
  return (4.0 * fine - coarse) / 3.0;
}

cplx j_volume_complex(const GradedCurve& curve) {
  cplx total = 0.0;
  for (const auto& seg : segments(curve)) {
    const double ta = curve.samples[seg.from].theta;
    const double tb = curve.samples[seg.to].theta;
    total += 0.5 * (std::polar(1.0, -ta) + std::polar(1.0, -tb)) * seg.dw;
  }
  return total;
}

double j_volume(const GradedCurve& curve) { return j_volume_complex(curve).real(); }

bool almost_calibrated_check(const GradedCurve& curve, double eps) {
  const double bound = 0.5 * kPi - eps;
  return std::all_of(curve.samples.begin(), curve.samples.end(),
                     [&](const Sample& s) { return s.theta >= -bound && s.theta <= bound; });
}

VolumeBound volume_bound_check(const GradedCurve& curve, double eps) {
  if (!(eps > 0.0 && eps < 0.5 * kPi)) {
    throw Error(ErrorCode::InvalidInput, "eps must lie in (0, pi/2)");
  }
  if (!almost_calibrated_check(curve, eps)) {
    throw Error(ErrorCode::NotAlmostCalibrated, "theta leaves [-pi/2+eps, pi/2-eps]");
  }
  double re_omega = 0.0;
  for (const auto& seg : segments(curve)) re_omega += seg.dw.real();
  VolumeBound out;
  out.lhs = volume(curve);
  out.rhs = re_omega / std::sin(eps);
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

double theta_oscillation(const GradedCurve& curve) {
  if (curve.samples.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(
      curve.samples.begin(), curve.samples.end(),
      [](const Sample& a, const Sample& b) { return a.theta < b.theta; });
  return hi->theta - lo->theta;
}

void recompute_potential(GradedCurve& curve) {
  auto& s = curve.samples;
  for (const auto& r : components(curve)) {
    for (std::size_t i = r.begin + 1; i < r.end; ++i) {
      s[i].f = s[i - 1].f + liouville_increment(curve.ambient, s[i - 1], s[i]);
    }
  }
}

void assign_potential(GradedCurve& curve, const std::vector<double>& anchors) {
  const auto comps = components(curve);
  if (anchors.size() < comps.size()) {
    throw Error(ErrorCode::InvalidInput, "every component needs an explicit potential anchor");
  }
  for (std::size_t k = 0; k < comps.size(); ++k) curve.samples[comps[k].begin].f = anchors[k];
  recompute_potential(curve);
}

double liouville_circulation(const GradedCurve& curve, int component) {
  double total = 0.0;
  for (const auto& seg : segments(curve)) {
    if (curve.samples[seg.from].component != component) continue;
    total += liouville_increment(curve.ambient, curve.samples[seg.from], curve.samples[seg.to]);
  }
  return total;
}

double exactness_defect(const GradedCurve& curve) {
  double worst = 0.0;
  for (const auto& seg : segments(curve)) {
    const auto& a = curve.samples[seg.from];
    const auto& b = curve.samples[seg.to];
    worst = std::max(worst, std::abs(b.f - a.f - liouville_increment(curve.ambient, a, b)));
  }
  return worst;
}

GradedCurve make_graph_curve(const std::function<double(double)>& q, double anchor_f,
                             const GraphOptions& opts, const std::function<double(double)>& dq) {
  if (opts.samples < 4 || !(opts.circumference > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "graph needs >= 4 samples and positive circumference");
  }
  const std::size_t n = opts.samples;
  const double h = opts.circumference / static_cast<double>(n);
  GradedCurve curve;
  curve.ambient = Ambient::cylinder(opts.circumference);
  curve.closed = true;
  curve.samples.resize(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = curve.samples[i];
    s.x = opts.x0 + h * static_cast<double>(i);
    s.p = q(s.x);
    mean += s.p;
  }
  mean /= static_cast<double>(n);
  if (std::abs(mean) > opts.mean_tol) {
    throw Error(ErrorCode::NotExact, "graph has nonzero mean " + std::to_string(mean));
  }
  const double fd = 1e-3 * h;
  for (auto& s : curve.samples) {
    double slope;
    if (dq) {
      slope = dq(s.x);
    } else {
      slope = (8.0 * (q(s.x + fd) - q(s.x - fd)) - (q(s.x + 2 * fd) - q(s.x - 2 * fd))) / (12.0 * fd);
    }
    s.theta = std::atan(slope);
  }
  curve.samples[0].f = anchor_f;
  recompute_potential(curve);
  return curve;
}

GradedCurve merge_components(const GradedCurve& a, const GradedCurve& b) {
  GradedCurve out = a;
  int shift = 0;
  for (const auto& s : a.samples) shift = std::max(shift, s.component + 1);
  for (auto s : b.samples) {
    s.component += shift;
    out.samples.push_back(s);
  }
  return out;
}

}  // namespace slag
