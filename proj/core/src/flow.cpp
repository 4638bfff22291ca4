#include "slag/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "slag/error.hpp"
#include "slag/solomon.hpp"

namespace slag {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

// alpha / sin(alpha), smooth through 0
double alpha_over_sin(double a) {
  if (std::abs(a) < 1e-4) return 1.0 + a * a / 6.0;
  return a / std::sin(a);
}

struct Geometry {
  std::size_t n = 0;
  std::vector<cplx> edge;     // X_{i+1} - X_i
  std::vector<double> len;    // |edge|
  std::vector<double> turn;   // turning angle at vertex i (edge i-1 -> edge i)
  std::vector<double> dual;   // (len_{i-1} + len_i) / 2
  double min_len = 0.0;
  double max_len = 0.0;
};

Geometry geometry(const GradedCurve& c) {
  Geometry g;
  g.n = c.size();
  const std::size_t n = g.n;
  g.edge.resize(n);
  g.len.resize(n);
  g.turn.resize(n);
  g.dual.resize(n);
  g.min_len = std::numeric_limits<double>::infinity();
  g.max_len = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g.edge[i] = displacement(c.ambient, c.samples[i], c.samples[(i + 1) % n]);
    g.len[i] = std::abs(g.edge[i]);
    if (!(g.len[i] > 0.0)) {
      throw Error(ErrorCode::ZeroTangent, "coincident samples at " + std::to_string(i));
    }
    g.min_len = std::min(g.min_len, g.len[i]);
    g.max_len = std::max(g.max_len, g.len[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n;
    g.turn[i] = std::arg(g.edge[i] / g.edge[im]);
    g.dual[i] = 0.5 * (g.len[im] + g.len[i]);
  }
  return g;
}

void check_single_closed(const GradedCurve& c) {
  if (!c.closed) throw Error(ErrorCode::OpenCurve, "flow needs a closed curve");
  if (c.size() < 4) throw Error(ErrorCode::InvalidInput, "flow needs at least 4 samples");
  if (components(c).size() != 1) {
    throw Error(ErrorCode::InvalidInput, "flow handles one component at a time");
  }
}

// Lifts raw edge angles spatially, first edge nearest `start`.
std::vector<double> lift_edges(const Geometry& g, double start) {
  std::vector<double> th(g.n);
  double raw0 = std::arg(g.edge[0]);
  th[0] = raw0 + 2.0 * kPi * std::round((start - raw0) / (2.0 * kPi));
  for (std::size_t i = 1; i < g.n; ++i) th[i] = th[i - 1] + g.turn[i];
  return th;
}

// Vertex angle: bisector lifted from the incoming edge.
void set_vertex_theta(GradedCurve& c, const Geometry& g, const std::vector<double>& edge_theta) {
  for (std::size_t i = 0; i < g.n; ++i) {
    c.samples[i].theta = (i == 0) ? edge_theta[0] - 0.5 * g.turn[0]
                                  : edge_theta[i - 1] + 0.5 * g.turn[i];
  }
}

bool exact_cylinder(const GradedCurve& c) { return c.ambient.kind == AmbientKind::Cylinder; }

// Rebuilds a discretely exact potential whose mean matches the current f.
double reproject_potential(GradedCurve& c) {
  double mean = 0.0;
  std::vector<double> before(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    before[i] = c.samples[i].f;
    mean += before[i];
  }
  mean /= static_cast<double>(c.size());
  recompute_potential(c);
  double mean2 = 0.0;
  for (const auto& s : c.samples) mean2 += s.f;
  mean2 /= static_cast<double>(c.size());
  double defect = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c.samples[i].f += mean - mean2;
    defect = std::max(defect, std::abs(c.samples[i].f - before[i]));
  }
  return defect;
}

void project_exactness(GradedCurve& c) {
  double dx_total = 0.0, circ = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = c.samples[i];
    const auto& b = c.samples[(i + 1) % n];
    const double dx = std::remainder(b.x - a.x, c.ambient.circumference);
    dx_total += dx;
    circ -= 0.5 * (a.p + b.p) * dx;
  }
  const long k = std::lround(dx_total / c.ambient.circumference);
  if (k == 0) return;
  const double delta = circ / (static_cast<double>(k) * c.ambient.circumference);
  for (auto& q : c.samples) q.p += delta;
}

// Periodic cubic Hermite interpolation in arclength, with y(s + L) = y(s) + offset.
class PeriodicCubic {
 public:
  PeriodicCubic(std::vector<double> s, double period, std::vector<double> y, double offset)
      : s_(std::move(s)), y_(std::move(y)), period_(period) {
    const std::size_t n = y_.size();
    s_.push_back(period_);
    y_.push_back(y_[0] + offset);
    m_.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double sp = (i == 0) ? s_[n - 1] - period_ : s_[i - 1];
      const double yp = (i == 0) ? y_[n - 1] - offset : y_[i - 1];
      const double sn = s_[i + 1];
      const double yn = y_[i + 1];
      const double h0 = s_[i] - sp, h1 = sn - s_[i];
      const double d0 = (y_[i] - yp) / h0, d1 = (yn - y_[i]) / h1;
      m_[i] = (h1 * d0 + h0 * d1) / (h0 + h1);
    }
    m_[n] = m_[0];
  }

  double operator()(double q) const {
    q = std::clamp(q, 0.0, period_);
    auto it = std::upper_bound(s_.begin(), s_.end(), q);
    std::size_t k = (it == s_.begin()) ? 0 : static_cast<std::size_t>(it - s_.begin()) - 1;
    k = std::min(k, s_.size() - 2);
    const double h = s_[k + 1] - s_[k];
    const double t = (q - s_[k]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * m_[k] +
           (-2 * t3 + 3 * t2) * y_[k + 1] + (t3 - t2) * h * m_[k + 1];
  }

 private:
  std::vector<double> s_, y_, m_;
  double period_;
};

// Edge-length target for curvature-adaptive sampling, per vertex.
std::vector<double> spacing_target(const Geometry& g, const FlowOptions& o) {
  std::vector<double> h(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double kappa = std::abs(g.turn[i]) / g.dual[i];
    double t = kappa > 0.0 ? o.adapt_c / kappa : o.h_max;
    h[i] = std::clamp(t, o.h_min, o.h_max);
  }
  // keep neighbouring targets within a factor 1.5 so spacing grades smoothly
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < 2 * g.n; ++k) {
      const std::size_t i = k % g.n, j = (k + 1) % g.n;
      h[j] = std::min(h[j], 1.5 * h[i]);
    }
    for (std::size_t k = 2 * g.n; k-- > 0;) {
      const std::size_t i = (k + 1) % g.n, j = k % g.n;
      h[j] = std::min(h[j], 1.5 * h[i]);
    }
  }
  return h;
}

bool needs_resample(const Geometry& g, const FlowOptions& o, std::vector<double>* target) {
  if (o.adapt_c > 0.0) {
    *target = spacing_target(g, o);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double t = std::min((*target)[i], (*target)[(i + 1) % g.n]);
      if (g.len[i] > 2.0 * t || g.len[i] < 0.4 * t) return true;
    }
    return false;
  }
  return g.max_len > o.resample_ratio * g.min_len;
}

double signed_area(const GradedCurve& c, std::size_t from, std::size_t count, const cplx* start) {
  const std::size_t n = c.size();
  std::vector<cplx> poly;
  if (start) poly.push_back(*start);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& q = c.samples[(from + k) % n];
    poly.push_back({q.x, q.p});
  }
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const cplx u = poly[k], v = poly[(k + 1) % poly.size()];
    a += u.real() * v.imag() - u.imag() * v.real();
  }
  return 0.5 * a;
}

// Moves the vertices in [from, from + count) along their left normals by d.
void offset_vertices(GradedCurve& c, std::size_t from, std::size_t count, double d) {
  const std::size_t n = c.size();
  std::vector<cplx> shift(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t i = (from + k) % n;
    const auto& a = c.samples[(i + n - 1) % n];
    const auto& q = c.samples[i];
    const auto& b = c.samples[(i + 1) % n];
    const cplx tin = displacement(c.ambient, a, q), tout = displacement(c.ambient, q, b);
    const cplx t = tin / std::abs(tin) + tout / std::abs(tout);
    shift[k] = cplx(0.0, 1.0) * t / std::abs(t) * d;
  }
  for (std::size_t k = 0; k < count; ++k) {
    auto& q = c.samples[(from + k) % n];
    q.x += shift[k].real();
    q.p += shift[k].imag();
  }
}

// Offsets each loop of a figure-eight along its normals until the signed
// lobe areas equal (wa, wb); lobes are matched by orientation.
void match_lobe_areas(GradedCurve& next, double wa, double wb) {
  for (int it = 0; it < 8; ++it) {
    const auto cn = find_self_intersection(next);
    if (!cn) return;
    const auto [ha, hb] = lobe_areas(next, *cn);
    const bool same = (ha < 0) == (wa < 0);
    const double ta = same ? wa : wb, tb = same ? wb : wa;
    const double ea = ha - ta, eb = hb - tb;
    if (std::abs(ea) <= 1e-15 * std::abs(ta) && std::abs(eb) <= 1e-15 * std::abs(tb)) break;
    const std::size_t n = next.size();
    const std::size_t na = cn->j - cn->i, nb = n - na;
    double pa = 0.0, pb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double len = std::abs(displacement(next.ambient, next.samples[k], next.samples[(k + 1) % n]));
      (k > cn->i && k < cn->j ? pa : pb) += len;
    }
    offset_vertices(next, cn->i + 1, na, ea / pa);
    offset_vertices(next, cn->j + 1, nb, eb / pb);
  }
}

// Resampling is a remap, not dynamics: restore the enclosed signed areas
// (each lobe of a figure-eight, or the whole loop in the plane).
void conserve_areas(GradedCurve& next, const GradedCurve& old, bool lobes) {
  if (next.ambient.kind == AmbientKind::Cylinder) {
    project_exactness(next);
    return;
  }
  if (!lobes) {
    const double want = signed_area(old, 0, old.size(), nullptr);
    for (int it = 0; it < 6; ++it) {
      const double have = signed_area(next, 0, next.size(), nullptr);
      const double perim = polyline_length(next);
      if (std::abs(have - want) <= 1e-15 * std::abs(want)) break;
      offset_vertices(next, 0, next.size(), (have - want) / perim);
    }
    return;
  }
  const auto co = find_self_intersection(old);
  if (!co) return;
  const auto [wa, wb] = lobe_areas(old, *co);
  match_lobe_areas(next, wa, wb);
}

void resample(FlowState& st, const Geometry& g, const FlowOptions& o, const std::vector<double>& target) {
  const auto& old = st.curve.samples;
  const std::size_t n = g.n;
  std::vector<double> s(n), xs(n), ps(n), ts(n), fs(n);
  double acc = 0.0, ux = old[0].x, circ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = acc;
    xs[i] = ux;
    ps[i] = old[i].p;
    ts[i] = old[i].theta;
    fs[i] = old[i].f;
    acc += g.len[i];
    ux += g.edge[i].real();
    circ += liouville_increment(st.curve.ambient, old[i], old[(i + 1) % n]);
  }
  const double length = acc;
  const double x_off = ux - old[0].x;
  const double theta_off = st.edge_theta[n - 1] + g.turn[0] - st.edge_theta[0];
  PeriodicCubic X(s, length, xs, x_off), P(s, length, ps, 0.0), T(s, length, ts, theta_off),
      F(s, length, fs, circ);

  // new arclength positions
  std::vector<double> where;
  if (o.adapt_c > 0.0) {
    // tau = int ds / h(s), h piecewise linear in s between vertices
    std::vector<double> tau(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double ha = target[i], hb = target[(i + 1) % n];
      tau[i + 1] = tau[i] + 0.5 * g.len[i] * (1.0 / ha + 1.0 / hb);
    }
    const std::size_t m = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(tau[n])));
    where.resize(m);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const double want = tau[n] * static_cast<double>(k) / static_cast<double>(m);
      while (seg + 1 < n && tau[seg + 1] <= want) ++seg;
      const double frac = (want - tau[seg]) / (tau[seg + 1] - tau[seg]);
      where[k] = s[seg] + frac * g.len[seg];
    }
  } else {
    where.resize(n);
    for (std::size_t k = 0; k < n; ++k) where[k] = length * static_cast<double>(k) / static_cast<double>(n);
  }

  GradedCurve next;
  next.ambient = st.curve.ambient;
  next.closed = true;
  next.samples.resize(where.size());
  const int comp = old[0].component;
  std::vector<double> theta_guess(where.size());
  for (std::size_t k = 0; k < where.size(); ++k) {
    auto& q = next.samples[k];
    q.x = X(where[k]);
    q.p = P(where[k]);
    q.f = F(where[k]);
    q.component = comp;
    const double mid = (k + 1 < where.size()) ? 0.5 * (where[k] + where[k + 1]) : 0.5 * (where[k] + length);
    theta_guess[k] = T(mid);
  }
  conserve_areas(next, st.curve, o.track_lobes);
  const Geometry ng = geometry(next);
  std::vector<double> et(ng.n);
  for (std::size_t k = 0; k < ng.n; ++k) {
    const double raw = std::arg(ng.edge[k]);
    et[k] = raw + 2.0 * kPi * std::round((theta_guess[k] - raw) / (2.0 * kPi));
  }
  set_vertex_theta(next, ng, et);
  st.curve = std::move(next);
  st.edge_theta = std::move(et);
  st.potential_defect = std::max(st.potential_defect, reproject_potential(st.curve));
  ++st.resamples;
}

}  // namespace

FlowState make_flow_state(GradedCurve curve, std::optional<GradedCurve> reference) {
  check_single_closed(curve);
  FlowState st;
  const Geometry g = geometry(curve);
  st.edge_theta = lift_edges(g, curve.samples[0].theta + 0.5 * g.turn[0]);
  set_vertex_theta(curve, g, st.edge_theta);
  if (exact_cylinder(curve)) reproject_potential(curve);
  st.curve = std::move(curve);
  st.reference = std::move(reference);
  return st;
}

double max_stable_dt(const FlowState& state, const FlowOptions& opts) {
  const Geometry g = geometry(state.curve);
  return opts.cfl * g.min_len * g.min_len;
}

namespace {

// Forward-Euler move of vertices and (on the cylinder) the potential.
void euler_stage(GradedCurve& c, const Geometry& g, double dt, bool transport) {
  auto& s = c.samples;
  const std::size_t n = g.n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n;
    const cplx t_in = g.edge[im] / g.len[im];
    const cplx t_out = g.edge[i] / g.len[i];
    const cplx v = alpha_over_sin(g.turn[i]) / g.dual[i] * (t_out - t_in);
    if (transport) s[i].f += dt * (-s[i].theta - s[i].p * v.real());
    s[i].x += dt * v.real();
    s[i].p += dt * v.imag();
  }
}

// Edge 0 follows its previous lift; the rest follow by turning angles.
void relift(std::vector<double>& edge_theta, const Geometry& g) {
  edge_theta[0] += wrap_pi(std::arg(g.edge[0]) - edge_theta[0]);
  for (std::size_t i = 1; i < g.n; ++i) edge_theta[i] = edge_theta[i - 1] + g.turn[i];
}

Geometry step_core(FlowState& st, const Geometry& g, double dt, const FlowOptions& opts) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidInput, "time step must be positive");
  if (st.edge_theta.size() != g.n) throw Error(ErrorCode::InvalidInput, "edge angles out of sync");
  const double limit = opts.cfl * g.min_len * g.min_len;
  if (dt > limit * (1.0 + 1e-9)) {
    throw Error(ErrorCode::CFLViolation, "dt " + std::to_string(dt) + " exceeds " + std::to_string(limit));
  }
  double worst = 0.0;
  for (double a : g.turn) worst = std::max(worst, std::abs(a));
  if (worst > opts.singularity) {
    throw Error(ErrorCode::SingularityReached,
                "|kappa| * spacing = " + std::to_string(worst) + " at t = " + std::to_string(st.time));
  }

  const bool cyl = exact_cylinder(st.curve);
  const bool transport = cyl && opts.transport_potential;
  Geometry ng;
  if (opts.integrator == Integrator::Euler) {
    euler_stage(st.curve, g, dt, transport);
  } else {
    const auto base = st.curve.samples;
    const auto base_theta = st.edge_theta;
    euler_stage(st.curve, g, dt, transport);
    const Geometry mid = geometry(st.curve);
    relift(st.edge_theta, mid);
    set_vertex_theta(st.curve, mid, st.edge_theta);
    euler_stage(st.curve, mid, dt, transport);
    for (std::size_t i = 0; i < g.n; ++i) {
      auto& q = st.curve.samples[i];
      q.x = 0.5 * (base[i].x + q.x);
      q.p = 0.5 * (base[i].p + q.p);
      q.f = 0.5 * (base[i].f + q.f);
    }
    st.edge_theta = base_theta;
  }
  if (cyl && opts.project_exactness) project_exactness(st.curve);
  ng = geometry(st.curve);
  relift(st.edge_theta, ng);
  set_vertex_theta(st.curve, ng, st.edge_theta);
  if (cyl) {
    const double defect = reproject_potential(st.curve);
    st.potential_defect = transport ? defect : 0.0;
  } else {
    recompute_potential(st.curve);
  }
  st.time += dt;

  std::vector<double> target;
  if (needs_resample(ng, opts, &target)) {
    resample(st, ng, opts, target);
    ng = geometry(st.curve);
  }
  return ng;
}

// CFL-limited sub-steps up to `target`.
void advance_in_place(FlowState& st, double target, const FlowOptions& opts) {
  check_single_closed(st.curve);
  Geometry g = geometry(st.curve);
  while (target - st.time > 1e-15 * std::max(1.0, std::abs(target))) {
    const double remaining = target - st.time;
    const double n = std::ceil(remaining / (opts.cfl * g.min_len * g.min_len) - 1e-12);
    g = step_core(st, g, remaining / std::max(1.0, n), opts);
  }
  st.time = target;
}

}  // namespace

FlowState csf_step(const FlowState& state, double dt, const FlowOptions& opts) {
  check_single_closed(state.curve);
  FlowState next = state;
  step_core(next, geometry(next.curve), dt, opts);
  return next;
}

FlowState advance(const FlowState& state, double dt_total, const FlowOptions& opts) {
  FlowState cur = state;
  advance_in_place(cur, state.time + dt_total, opts);
  return cur;
}

std::optional<Crossing> find_self_intersection(const GradedCurve& curve) {
  const std::size_t n = curve.size();
  if (n < 4) return std::nullopt;
  std::vector<cplx> pt(n);
  for (std::size_t i = 0; i < n; ++i) pt[i] = {curve.samples[i].x, curve.samples[i].p};
  struct Box {
    double lo, hi;
    std::size_t i;
  };
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = pt[i], b = pt[(i + 1) % n];
    boxes[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), i};
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) { return a.lo < b.lo; });
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  std::optional<Crossing> best;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n && boxes[b].lo <= boxes[a].hi; ++b) {
      std::size_t i = boxes[a].i, j = boxes[b].i;
      if (i > j) std::swap(i, j);
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const cplx p0 = pt[i], p1 = pt[(i + 1) % n], q0 = pt[j], q1 = pt[(j + 1) % n];
      const cplx r = p1 - p0, s = q1 - q0;
      const double den = cross(r, s);
      if (den == 0.0) continue;
      const double t = cross(q0 - p0, s) / den;
      const double u = cross(q0 - p0, r) / den;
      if (t < 0.0 || t >= 1.0 || u < 0.0 || u >= 1.0) continue;
      Crossing c{i, j, t, u, p0 + t * r};
      if (!best || i < best->i || (i == best->i && j < best->j)) best = c;
    }
  }
  return best;
}

std::pair<double, double> lobe_areas(const GradedCurve& curve, const Crossing& c) {
  const std::size_t n = curve.size();
  auto at = [&](std::size_t k) { return cplx{curve.samples[k % n].x, curve.samples[k % n].p}; };
  auto shoelace = [](const std::vector<cplx>& poly) {
    double a = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const cplx u = poly[k], v = poly[(k + 1) % poly.size()];
      a += u.real() * v.imag() - u.imag() * v.real();
    }
    return 0.5 * a;
  };
  std::vector<cplx> first{c.point}, second{c.point};
  for (std::size_t k = c.i + 1; k <= c.j; ++k) first.push_back(at(k));
  for (std::size_t k = c.j + 1; k <= c.i + n; ++k) second.push_back(at(k));
  return {shoelace(first), shoelace(second)};
}

FlowRecord measure(const FlowState& state, const FlowOptions& opts) {
  const Geometry g = geometry(state.curve);
  FlowRecord r;
  r.t = state.time;
  r.samples = g.n;
  r.sup_theta = -std::numeric_limits<double>::infinity();
  r.inf_theta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.n; ++i) {
    const double th = state.edge_theta[i];
    const double d = th - opts.thetahat;
    r.sup_theta = std::max(r.sup_theta, th);
    r.inf_theta = std::min(r.inf_theta, th);
    r.theta_l2 += g.len[i] * d * d;
    r.dissipation += g.len[i] * d * std::sin(d);
    r.volume += g.len[i];
    const double kappa = g.turn[i] / g.dual[i];
    r.meanH_l2 += kappa * kappa * g.dual[i];
    r.max_kappa = std::max(r.max_kappa, std::abs(kappa));
    r.max_turning = std::max(r.max_turning, std::abs(g.turn[i]));
  }
  r.liouville = liouville_circulation(state.curve, state.curve.samples[0].component);
  r.potential_defect = state.potential_defect;
  r.solomon = kNaN;
  if (state.reference) {
    SolomonOptions so;
    so.thetahat = opts.thetahat;
    r.solomon = solomon_functional(state.curve, *state.reference, so).value;
  }
  r.lobe1 = r.lobe2 = kNaN;
  if (opts.track_lobes) {
    const auto c = find_self_intersection(state.curve);
    if (!c) {
      throw Error(ErrorCode::SelfIntersectionLost, "no self-intersection at t = " + std::to_string(state.time));
    }
    const auto [a, b] = lobe_areas(state.curve, *c);
    int sign = state.lobe_sign;
    if (sign == 0) sign = (std::abs(a) <= std::abs(b)) ? (a < 0 ? -1 : 1) : (b < 0 ? -1 : 1);
    const bool a_first = (a < 0 ? -1 : 1) == sign;
    r.lobe1 = std::abs(a_first ? a : b);
    r.lobe2 = std::abs(a_first ? b : a);
  }
  return r;
}

void record(FlowState& state, const FlowOptions& opts) {
  if (opts.track_lobes && state.lobe_sign == 0) {
    const auto c = find_self_intersection(state.curve);
    if (!c) throw Error(ErrorCode::SelfIntersectionLost, "figure-eight has no crossing");
    const auto [a, b] = lobe_areas(state.curve, *c);
    const double small = std::abs(a) <= std::abs(b) ? a : b;
    state.lobe_sign = small < 0 ? -1 : 1;
  }
  state.history.push_back(measure(state, opts));
}

double theta_heat_residual(const FlowState& before, const FlowState& after) {
  const std::size_t n = before.curve.size();
  if (after.curve.size() != n || !(after.time > before.time)) {
    throw Error(ErrorCode::InvalidInput, "residual needs consecutive states on one sampling");
  }
  const Geometry g = geometry(before.curve);
  const double dt = after.time - before.time;
  const auto& a = before.curve.samples;
  const auto& b = after.curve.samples;
  const double rot = before.edge_theta[n - 1] + g.turn[0] - before.edge_theta[0];
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
    const double th_m = a[im].theta - (i == 0 ? rot : 0.0);
    const double th_p = a[ip].theta + (i == n - 1 ? rot : 0.0);
    const double h0 = g.len[im], h1 = g.len[i];
    const double lap = 2.0 / (h0 + h1) * ((th_p - a[i].theta) / h1 - (a[i].theta - th_m) / h0);
    worst = std::max(worst, std::abs((b[i].theta - a[i].theta) / dt - lap));
  }
  return worst;
}

Monotonicity monotonicity_monitor(const FlowState& state, double slack, double dsdt_rel_tol) {
  Monotonicity m;
  const auto& h = state.history;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    const auto& a = h[k];
    const auto& b = h[k + 1];
    ++m.steps;
    if (b.sup_theta > a.sup_theta + slack) m.sup_theta_nonincreasing = false;
    if (b.inf_theta < a.inf_theta - slack) m.inf_theta_nondecreasing = false;
    if (b.volume > a.volume + slack) m.volume_nonincreasing = false;
    if (std::isfinite(a.solomon) && std::isfinite(b.solomon)) {
      if (b.solomon > a.solomon + slack) m.solomon_nonincreasing = false;
      const double dt = b.t - a.t;
      const double measured = (b.solomon - a.solomon) / dt;
      const double predicted = -0.5 * (a.dissipation + b.dissipation);
      if (predicted != 0.0) {
        const double rel = std::abs(measured - predicted) / std::abs(predicted);
        m.max_dsdt_rel_err = std::max(m.max_dsdt_rel_err, rel);
        if (rel > dsdt_rel_tol) m.dsdt_ok = false;
      }
    }
  }
  return m;
}

EnergyIdentity energy_identity_check(const FlowState& state) {
  const auto& h = state.history;
  if (h.size() < 2) throw Error(ErrorCode::InvalidInput, "energy identity needs at least two records");
  EnergyIdentity e;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    e.lhs += 0.5 * (h[k].meanH_l2 + h[k + 1].meanH_l2) * (h[k + 1].t - h[k].t);
  }
  e.rhs = 0.5 * (h.front().theta_l2 - h.back().theta_l2);
  e.rel_err = std::abs(e.lhs - e.rhs) / std::abs(e.rhs);
  return e;
}

RunResult run_flow(FlowState state, double t_end, double record_dt, const FlowOptions& opts) {
  if (!(record_dt > 0.0) || !(t_end >= state.time)) {
    throw Error(ErrorCode::InvalidInput, "run needs record_dt > 0 and t_end >= t0");
  }
  RunResult out;
  const double t0 = state.time;
  if (state.history.empty()) {
    check_single_closed(state.curve);
    const Geometry g = geometry(state.curve);
    std::vector<double> target;
    if (needs_resample(g, opts, &target)) resample(state, g, opts, target);
    record(state, opts);
  }
  const auto steps = static_cast<std::size_t>(std::llround((t_end - t0) / record_dt));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double target = (k == steps) ? t_end : t0 + record_dt * static_cast<double>(k);
    try {
      advance_in_place(state, target, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularityReached) throw;
      out.singular = true;
      out.singular_time = state.time;
      record(state, opts);
      break;
    }
    record(state, opts);
  }
  out.state = std::move(state);
  return out;
}

GradedCurve make_circle(double r0, std::size_t n) {
  if (!(r0 > 0.0) || n < 8) throw Error(ErrorCode::InvalidInput, "circle needs r0 > 0 and n >= 8");
  const double nn = static_cast<double>(n);
  const double rc = r0 * std::sqrt(2.0 * kPi / (nn * std::sin(2.0 * kPi / nn)));
  GradedCurve c;
  c.ambient = Ambient::plane();
  c.closed = true;
  c.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / nn;
    c.samples[i].x = rc * std::cos(a);
    c.samples[i].p = rc * std::sin(a);
    c.samples[i].theta = a + 0.5 * kPi;
  }
  recompute_potential(c);
  return c;
}

namespace {

cplx eight_point(double s, double b) {
  const double w = std::cos(s) * (1.0 + b * std::cos(s));
  return {w, std::sin(s) * w};
}

// areas of the left (cos s < 0) and right lobes
std::pair<double, double> eight_lobes(double b) {
  constexpr int m = 20000;
  auto lobe = [&](double s0) {
    double a = 0.0;
    cplx prev = eight_point(s0, b);
    for (int k = 1; k <= m; ++k) {
      const cplx cur = eight_point(s0 + kPi * k / m, b);
      a += prev.real() * cur.imag() - prev.imag() * cur.real();
      prev = cur;
    }
    return std::abs(0.5 * a);
  };
  return {lobe(0.5 * kPi), lobe(-0.5 * kPi)};
}

}  // namespace

GradedCurve make_figure_eight(double a1, double a2, std::size_t n) {
  if (!(a1 > 0.0) || !(a2 >= a1) || n < 16) {
    throw Error(ErrorCode::InvalidInput, "figure-eight needs 0 < a1 <= a2 and n >= 16");
  }
  const double ratio = a1 / a2;
  double lo = 0.0, hi = 0.999, b = 0.0;
  if (ratio < 1.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      b = 0.5 * (lo + hi);
      const auto [l, r] = eight_lobes(b);
      (l / r > ratio ? lo : hi) = b;
    }
    b = 0.5 * (lo + hi);
  }
  const double scale = std::sqrt(a2 / eight_lobes(b).second);

  // fine polyline, then uniform arclength
  constexpr std::size_t m = 40000;
  std::vector<cplx> fine(m);
  std::vector<double> s(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) fine[k] = scale * eight_point(2.0 * kPi * k / m, b);
  for (std::size_t k = 0; k < m; ++k) s[k + 1] = s[k] + std::abs(fine[(k + 1) % m] - fine[k]);
  GradedCurve c;
  c.ambient = Ambient::plane();
  c.closed = true;
  c.samples.resize(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double want = s[m] * static_cast<double>(i) / static_cast<double>(n);
    while (seg + 1 < m && s[seg + 1] <= want) ++seg;
    const double t = (want - s[seg]) / (s[seg + 1] - s[seg]);
    const cplx z = fine[seg] + t * (fine[(seg + 1) % m] - fine[seg]);
    c.samples[i].x = z.real();
    c.samples[i].p = z.imag();
  }
  // the inscribed polygon loses a little area in each lobe; put it back
  if (const auto cr = find_self_intersection(c)) {
    const auto [sa, sb] = lobe_areas(c, *cr);
    const bool a_small = std::abs(sa) <= std::abs(sb);
    match_lobe_areas(c, std::copysign(a_small ? a1 : a2, sa), std::copysign(a_small ? a2 : a1, sb));
  }
  c = with_phase(c);
  recompute_potential(c);
  return c;
}

FigureEightReport figure_eight_run(double a1, double a2, std::size_t n, const FlowOptions& opts,
                                   double record_dt, double t_max) {
  FlowOptions o = opts;
  o.track_lobes = true;
  FigureEightReport rep;
  FlowState st = make_flow_state(make_figure_eight(a1, a2, n));
  rep.run = run_flow(std::move(st), t_max, record_dt, o);
  const auto& h = rep.run.state.history;
  rep.a1 = h.front().lobe1;
  rep.a2 = h.front().lobe2;
  rep.symmetric = std::abs(rep.a1 - rep.a2) <= 1e-9 * rep.a2;
  rep.lobe1_final = h.back().lobe1;
  rep.lobe2_final = h.back().lobe2;
  rep.kappa_initial = h.front().max_kappa;
  rep.kappa_final = h.back().max_kappa;
  for (std::size_t k = 0; k + 1 < h.size(); ++k) {
    if (h[k + 1].lobe1 > h[k].lobe1) rep.smaller_monotone = false;
    if (h[k + 1].lobe2 > h[k].lobe2) rep.larger_monotone = false;
    rep.lobe1_rate.push_back((h[k + 1].lobe1 - h[k].lobe1) / (h[k + 1].t - h[k].t));
  }
  return rep;
}

}  // namespace slag
