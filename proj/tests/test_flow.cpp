#include "slag/flow.hpp"
#include "slag/random.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

double shoelace(const slag::GradedCurve& c) {
  double a = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& p = c.samples[i];
    const auto& q = c.samples[(i + 1) % c.size()];
    a += 0.5 * (p.x * q.p - p.p * q.x);
  }
  return a;
}

// Star-shaped polygon r(s) = 1 + eps cos(k s), unevenly sampled in s.
slag::GradedCurve wobbly(std::size_t n, double eps, int k, slag::Pcg32& rng) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (i + 0.3 * rng.uniform()) * 2 * kPi / double(n);
  std::vector<std::pair<double, double>> pts;
  for (double v : s) {
    const double r = 1 + eps * std::cos(k * v);
    pts.emplace_back(r * std::cos(v), r * std::sin(v));
  }
  return plane_polygon(pts);
}

}  // namespace

TEST(Flow, AreaRateIsMinusTwoPi) {
  // the turning-angle scheme moves area at exactly -sum(alpha) = -2 pi per unit time
  slag::Pcg32 rng(1, 1);
  auto st = slag::make_flow_state(wobbly(600, 0.1, 3, rng));
  const double dt = 0.25 * slag::max_stable_dt(st);
  const double a0 = shoelace(st.curve);
  slag::FlowOptions fo;
  fo.resample_ratio = 1e9;
  const auto next = slag::csf_step(st, dt, fo);
  const double rate = (shoelace(next.curve) - a0) / dt;
  EXPECT_NEAR(rate, -2 * kPi, 2 * kPi * 1e-3);
}

TEST(Flow, LengthDecreases) {
  slag::Pcg32 rng(2, 2);
  auto st = slag::make_flow_state(wobbly(400, 0.15, 4, rng));
  double len = slag::polyline_length(st.curve);
  for (int i = 0; i < 50; ++i) {
    st = slag::csf_step(st, slag::max_stable_dt(st));
    const double next = slag::polyline_length(st.curve);
    EXPECT_LE(next, len + 1e-14);
    len = next;
  }
}

TEST(Flow, ThetaSolvesDiscreteHeatEquation) {
  auto st = slag::make_flow_state(sine(0.3, 256), zero(256));
  const double dt = 1e-3 * slag::max_stable_dt(st);
  slag::FlowOptions fo;
  fo.resample_ratio = 1e9;
  fo.transport_potential = false;
  const auto next = slag::csf_step(st, dt, fo);
  EXPECT_LT(slag::theta_heat_residual(st, next), 1e-2);
}

TEST(Flow, CircleShrinksLikeSqrt) {
  slag::FlowOptions fo;
  fo.integrator = slag::Integrator::Heun;
  auto st = slag::make_flow_state(slag::make_circle(1.0, 128));
  EXPECT_NEAR(shoelace(st.curve), kPi, 1e-12);
  for (double t : {0.1, 0.25, 0.4}) {
    st = slag::advance(st, t - st.time, fo);
    EXPECT_NEAR(std::sqrt(shoelace(st.curve) / kPi), std::sqrt(1 - 2 * t), 1e-8);
  }
}

TEST(Flow, CflAndInputChecks) {
  auto st = slag::make_flow_state(slag::make_circle(1.0, 64));
  expect_code([&] { slag::csf_step(st, 10 * slag::max_stable_dt(st)); }, slag::ErrorCode::CFLViolation);
  expect_code([&] { slag::csf_step(st, -1.0); }, slag::ErrorCode::InvalidInput);
  auto open = slag::make_circle(1.0, 64);
  open.closed = false;
  expect_code([&] { slag::make_flow_state(open); }, slag::ErrorCode::OpenCurve);
  expect_code([] { slag::make_circle(1.0, 4); }, slag::ErrorCode::InvalidInput);
}

TEST(Flow, SingularityStopsShrinkingCircle) {
  auto st = slag::make_flow_state(slag::make_circle(1.0, 64));
  const auto res = slag::run_flow(st, 1.0, 0.05);
  EXPECT_TRUE(res.singular);
  // extinction of the area-normalized polygon is at t = 1/2
  EXPECT_NEAR(res.singular_time, 0.5, 0.01);
}

TEST(Flow, GraphFlowDiagnostics) {
  auto st = slag::make_flow_state(sine(0.3, 128), zero(128));
  const auto res = slag::run_flow(st, 1.0, 0.05);
  ASSERT_FALSE(res.singular);
  const auto& h = res.state.history;
  ASSERT_EQ(h.size(), 21u);
  const auto m = slag::monotonicity_monitor(res.state);
  EXPECT_TRUE(m.sup_theta_nonincreasing);
  EXPECT_TRUE(m.inf_theta_nondecreasing);
  EXPECT_TRUE(m.volume_nonincreasing);
  EXPECT_TRUE(m.solomon_nonincreasing);
  EXPECT_TRUE(m.dsdt_ok);
  EXPECT_NEAR(h.front().solomon, kPi * 0.09 / 2, 1e-3);
  // theta of a graph decays like e^{-t} in its lowest mode
  EXPECT_NEAR(h.back().sup_theta / h.front().sup_theta, std::exp(-1.0), 0.05);
  for (const auto& r : h) {
    EXPECT_LT(r.potential_defect, 1e-7);
    EXPECT_NEAR(r.liouville, 0.0, 1e-9);
  }
  EXPECT_LT(slag::exactness_defect(res.state.curve), 1e-12);
  const auto e = slag::energy_identity_check(res.state);
  EXPECT_LT(e.rel_err, 2e-2);
}

TEST(Flow, FigureEightConstruction) {
  const auto c = slag::make_figure_eight(0.5, 1.0, 256);
  const auto cross = slag::find_self_intersection(c);
  ASSERT_TRUE(cross.has_value());
  const auto [l1, l2] = slag::lobe_areas(c, *cross);
  EXPECT_NEAR(std::min(std::abs(l1), std::abs(l2)), 0.5, 1e-9);
  EXPECT_NEAR(std::max(std::abs(l1), std::abs(l2)), 1.0, 1e-9);
  EXPECT_LT(l1 * l2, 0.0);  // the lobes turn in opposite senses
  EXPECT_NEAR(shoelace(c), l1 + l2, 1e-9);
}

TEST(Flow, FigureEightSmallLobeCollapses) {
  slag::FlowOptions fo;
  fo.integrator = slag::Integrator::Heun;
  fo.adapt_c = 0.05;
  fo.h_min = 1e-3;
  fo.h_max = 0.05;
  const auto rep = slag::figure_eight_run(0.5, 1.0, 128, fo, 5e-3, 1.0);
  EXPECT_TRUE(rep.run.singular);
  EXPECT_TRUE(rep.smaller_monotone);
  EXPECT_TRUE(rep.larger_monotone);
  EXPECT_LT(rep.lobe1_final, 0.05 * rep.a1);
  EXPECT_GT(rep.lobe2_final, 0.5 * rep.a2);
  // a lobe with one corner loses area at a rate between pi and 2 pi
  EXPECT_GT(rep.run.singular_time, 0.5 / (2 * kPi));
  EXPECT_LT(rep.run.singular_time, 0.5 / kPi);
}

TEST(Flow, SelfIntersectionOfSimpleCurve) {
  EXPECT_FALSE(slag::find_self_intersection(slag::make_circle(1.0, 64)).has_value());
}
