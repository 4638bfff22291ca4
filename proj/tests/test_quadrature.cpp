#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "slag/quadrature.hpp"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Quadrature, PolynomialsAreExact) {
  const auto r = slag::quad::integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-13);
}

TEST(Quadrature, AgreesWithTanhSinh) {
  auto f = [](double x) { return std::exp(-x) * std::sin(5 * x) / (1 + x * x); };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double oracle = ts.integrate(f, 0.0, 3.0);
  const auto r = slag::quad::integrate(f, 0.0, 3.0);
  EXPECT_NEAR(r.value, oracle, 1e-10);
}

TEST(Quadrature, EndpointSingularity) {
  // int_0^1 x^{-1/2} = 2; adaptivity has to refine toward 0
  slag::quad::Options o;
  o.abs_tol = 1e-9;
  o.max_intervals = 5000;
  const auto r = slag::quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, o);
  EXPECT_NEAR(r.value, 2.0, 1e-7);
}

TEST(Quadrature, AlgebraicTail) {
  // 1 / (1 + x^2) on [0, inf) with the tail written in u = 1/x
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  auto tail = [](double u) { return 1.0 / (u * u + 1.0); };
  const auto r = slag::quad::integrate_to_infinity(f, tail, 0.0);
  EXPECT_NEAR(r.value, kPi / 2, 1e-10);

  // x^{-3} (1 + x)^{-1} from 2: compare against exp_sinh
  auto g = [](double x) { return 1.0 / (x * x * x * (1.0 + x)); };
  auto gt = [](double u) { return u * u / (u + 1.0); };
  boost::math::quadrature::exp_sinh<double> es;
  const double oracle = es.integrate(g, 2.0, std::numeric_limits<double>::infinity());
  EXPECT_NEAR(slag::quad::integrate_to_infinity(g, gt, 2.0).value, oracle, 1e-11);
}

TEST(Quadrature, ReportsNonConvergence) {
  slag::quad::Options o;
  o.abs_tol = 1e-14;
  o.max_intervals = 3;
  const auto r = slag::quad::integrate([](double x) { return std::sin(200 * x); }, 0.0, 10.0, o);
  EXPECT_FALSE(r.converged);
}
