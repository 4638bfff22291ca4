#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slag/curve.hpp"
#include "support.hpp"

using namespace testing_support;

TEST(Curve, GraphPhaseIsArctanSlope) {
  const auto L = sine(0.7, 512);
  ASSERT_EQ(L.size(), 512u);
  double worst = 0.0;
  for (const auto& s : L.samples) worst = std::max(worst, std::abs(s.theta - std::atan(0.7 * std::cos(s.x))));
  EXPECT_LT(worst, 1e-12);
  // the polyline's own edge angles agree to second order
  const auto lifted = slag::phase_angles(L);
  for (std::size_t i = 0; i < L.size(); ++i) EXPECT_NEAR(lifted[i], L.samples[i].theta, 1e-4);
}

TEST(Curve, GraphCentralChargeAndWinding) {
  const auto L = sine(0.4, 256);
  const auto z = slag::central_charge(L);
  EXPECT_NEAR(z.real(), 2 * kPi, 1e-12);
  EXPECT_NEAR(z.imag(), 0.0, 1e-12);
  EXPECT_EQ(slag::winding_number(L, 0), 1);
}

TEST(Curve, ContractibleLoopHasZeroChargeAndWinding) {
  const auto sq = plane_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_LT(std::abs(slag::central_charge(sq)), 1e-15);
  EXPECT_DOUBLE_EQ(slag::polyline_length(sq), 4.0);
}

TEST(Curve, VolumeMatchesArcLengthOracle) {
  const double t = 0.8;
  boost::math::quadrature::gauss_kronrod<double, 31> gk;
  const double oracle =
      gk.integrate([t](double x) { return std::sqrt(1 + t * t * std::cos(x) * std::cos(x)); }, 0.0, 2 * kPi, 15, 1e-14);
  EXPECT_NEAR(slag::volume(sine(t, 512)), oracle, 1e-9 * oracle);
  EXPECT_LT(slag::polyline_length(sine(t, 512)), oracle);
}

TEST(Curve, LiouvilleIncrementIsTrapezoid) {
  const auto amb = slag::Ambient::cylinder();
  slag::Sample a{0.2, 1.5}, b{0.7, -0.5};
  EXPECT_DOUBLE_EQ(slag::liouville_increment(amb, a, b), -0.5 * (1.5 - 0.5) * 0.5);
}

TEST(Curve, MinimalImageAcrossSeam) {
  const auto amb = slag::Ambient::cylinder(1.0);
  slag::Sample a{0.95, 0.0}, b{0.05, 0.1};
  const auto d = slag::displacement(amb, a, b);
  EXPECT_NEAR(d.real(), 0.1, 1e-15);
  EXPECT_NEAR(d.imag(), 0.1, 1e-15);
}

TEST(Curve, PotentialIsDiscretelyExact) {
  const auto L = graph([](double x) { return 0.3 * std::sin(2 * x) - 0.2 * std::cos(x); },
                       [](double x) { return 0.6 * std::cos(2 * x) + 0.2 * std::sin(x); }, 400, 1.25);
  EXPECT_LT(slag::exactness_defect(L), 1e-13);
  EXPECT_DOUBLE_EQ(L.samples.front().f, 1.25);
  // f(x) = anchor - int_0^x q: compare with the closed form at every sample
  double worst = 0.0;
  for (const auto& s : L.samples) {
    const double exact = 1.25 - (0.15 * (1 - std::cos(2 * s.x)) - 0.2 * std::sin(s.x));
    worst = std::max(worst, std::abs(s.f - exact));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Curve, AssignPotentialSetsAnchors) {
  auto L = sine(0.2, 64);
  slag::assign_potential(L, {3.0});
  EXPECT_DOUBLE_EQ(L.samples.front().f, 3.0);
  EXPECT_LT(slag::exactness_defect(L), 1e-13);
}

TEST(Curve, GraphWithMeanIsNotExact) {
  expect_code([] { graph([](double x) { return 0.1 + std::sin(x); }, {}, 128); }, slag::ErrorCode::NotExact);
}

TEST(Curve, CoincidentSamplesRejected) {
  slag::GradedCurve c;
  c.ambient = slag::Ambient::plane();
  c.samples = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  expect_code([&] { slag::phase_angles(c); }, slag::ErrorCode::ZeroTangent);
}

TEST(Curve, OpenCurveHasNoCharge) {
  auto c = sine(0.1, 32);
  c.closed = false;
  expect_code([&] { slag::central_charge(c); }, slag::ErrorCode::OpenCurve);
}

TEST(Curve, JVolumeSqueezedBetweenChargeAndVolume) {
  const auto L = graph([](double x) { return 0.5 * std::sin(x) + 0.2 * std::sin(3 * x); },
                       [](double x) { return 0.5 * std::cos(x) + 0.6 * std::cos(3 * x); }, 1024);
  const double z = std::abs(slag::central_charge(L));
  const double jv = slag::j_volume(L);
  EXPECT_LE(z, jv + 1e-9);
  EXPECT_LE(jv, slag::volume(L) + 1e-9);
}

TEST(Curve, AlmostCalibratedVolumeBound) {
  const auto L = sine(0.5, 512);  // |theta| <= atan 0.5
  const double eps = kPi / 2 - std::atan(0.5) - 0.01;
  EXPECT_TRUE(slag::almost_calibrated_check(L, eps));
  const auto b = slag::volume_bound_check(L, eps);
  EXPECT_TRUE(b.ok);
  EXPECT_LE(b.lhs, b.rhs);
  EXPECT_FALSE(slag::almost_calibrated_check(sine(3.0, 512), 0.5));
  expect_code([&] { slag::volume_bound_check(sine(3.0, 512), 0.5); }, slag::ErrorCode::NotAlmostCalibrated);
}

TEST(Curve, OscillationOfGraph) {
  EXPECT_NEAR(slag::theta_oscillation(sine(1.0, 2048)), 2 * std::atan(1.0), 1e-6);
}

TEST(Curve, MergeKeepsComponents) {
  const auto m = slag::merge_components(sine(0.1, 32), sine(0.2, 48, 1.0));
  const auto comps = slag::components(m);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size(), 32u);
  EXPECT_EQ(comps[1].size(), 48u);
  EXPECT_NEAR(slag::central_charge(m).real(), 4 * kPi, 1e-12);
  EXPECT_NEAR(slag::central_charge(m, 1).real(), 2 * kPi, 1e-12);
}
