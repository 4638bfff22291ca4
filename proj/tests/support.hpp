#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "slag/curve.hpp"
#include "slag/error.hpp"

namespace testing_support {

inline constexpr double kPi = std::numbers::pi;

template <class F>
void expect_code(F&& f, slag::ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << slag::to_string(code) << ", nothing thrown";
  } catch (const slag::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline slag::GradedCurve graph(std::function<double(double)> q, std::function<double(double)> dq, std::size_t n,
                               double anchor = 0.0) {
  slag::GraphOptions go;
  go.samples = n;
  return slag::make_graph_curve(q, anchor, go, dq);
}

inline slag::GradedCurve sine(double t, std::size_t n, double anchor = 0.0) {
  return graph([t](double x) { return t * std::sin(x); }, [t](double x) { return t * std::cos(x); }, n, anchor);
}

inline slag::GradedCurve zero(std::size_t n) {
  return graph([](double) { return 0.0; }, [](double) { return 0.0; }, n);
}

/// Closed plane polygon through the given points.  A simple loop turns once,
/// so theta is the lifted bisector angle and gains 2 pi around the loop.
inline slag::GradedCurve plane_polygon(const std::vector<std::pair<double, double>>& pts) {
  slag::GradedCurve c;
  c.ambient = slag::Ambient::plane();
  const std::size_t n = pts.size();
  std::vector<std::complex<double>> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x0, p0] = pts[i];
    const auto [x1, p1] = pts[(i + 1) % n];
    e[i] = {x1 - x0, p1 - p0};
  }
  double edge = std::arg(e[0]);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) edge += std::arg(e[i] / e[i - 1]);
    const double prev = i == 0 ? edge - std::arg(e[0] / e[n - 1]) : edge - std::arg(e[i] / e[i - 1]);
    c.samples.push_back({pts[i].first, pts[i].second, 0.5 * (prev + edge), 0.0, 0});
  }
  slag::recompute_potential(c);
  return c;
}

}  // namespace testing_support
