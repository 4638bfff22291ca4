#include <boost/math/quadrature/exp_sinh.hpp>

#include "slag/lawlor.hpp"
#include "slag/random.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

// P(x) = (prod(1 + a_k x^2) - 1) / x^2 through expm1/log1p, independent of
// the library's elementary-symmetric expansion.
double P_oracle(const std::vector<double>& a, double x) {
  if (x < 1e-100) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
  }
  double acc = 0.0;
  for (double v : a) acc += std::log1p(v * x * x);
  if (acc > 40.0) return std::exp(acc - 2.0 * std::log(x));
  return std::expm1(acc) / (x * x);
}

struct Oracle {
  std::vector<double> phi;
  double area;
};

Oracle lawlor_oracle(const std::vector<double>& a) {
  boost::math::quadrature::exp_sinh<double> es;
  const double inf = std::numeric_limits<double>::infinity();
  Oracle o;
  for (double ak : a) {
    o.phi.push_back(2.0 * es.integrate([&](double x) { return ak / ((1 + ak * x * x) * std::sqrt(P_oracle(a, x))); },
                                       0.0, inf));
  }
  o.area = es.integrate([&](double x) { return 1.0 / std::sqrt(P_oracle(a, x)); }, 0.0, inf);
  return o;
}

std::vector<double> random_a(slag::Pcg32& rng, int n) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& v : a) v = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
  return a;
}

}  // namespace

TEST(Lawlor, SymmetricNeckHasEqualAngles) {
  for (int n = 3; n <= 6; ++n) {
    const auto neck = slag::angles_and_area(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    for (double p : neck.phi) EXPECT_NEAR(p, kPi / n, 1e-10);
  }
}

TEST(Lawlor, MatchesIndependentQuadrature) {
  slag::Pcg32 rng(2024, 1);
  for (int i = 0; i < 12; ++i) {
    const auto a = random_a(rng, 3 + i % 3);
    const auto neck = slag::angles_and_area(a);
    const auto o = lawlor_oracle(a);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(neck.phi[k], o.phi[k], 1e-9);
    EXPECT_NEAR(neck.area, o.area, 1e-9 * o.area);
  }
}

TEST(Lawlor, AngleSumPropertyOverRandomNecks) {
  slag::Pcg32 rng(5, 5);
  for (int i = 0; i < 60; ++i) {
    const auto neck = slag::angles_and_area(random_a(rng, rng.uniform_int(3, 6)));
    double s = 0.0;
    for (double p : neck.phi) {
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, kPi);
      s += p;
    }
    EXPECT_NEAR(s, kPi, 1e-8);
  }
}

TEST(Lawlor, AreaScalesQuadratically) {
  const std::vector<double> a{0.3, 2.0, 5.0, 1.1};
  const auto base = slag::angles_and_area(a);
  for (double lam : {0.5, 3.0}) {
    auto b = a;
    for (auto& v : b) v /= lam * lam;
    const auto s = slag::angles_and_area(b);
    EXPECT_NEAR(s.area, lam * lam * base.area, 1e-9 * lam * lam * base.area);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(s.phi[k], base.phi[k], 1e-10);
  }
}

TEST(Lawlor, LargerParameterGivesLargerAngle) {
  const auto neck = slag::angles_and_area({0.5, 1.0, 4.0});
  EXPECT_LT(neck.phi[0], neck.phi[1]);
  EXPECT_LT(neck.phi[1], neck.phi[2]);
}

TEST(Lawlor, InvertRoundTrip) {
  slag::Pcg32 rng(11, 2);
  for (int i = 0; i < 6; ++i) {
    const auto a = random_a(rng, 3 + i % 2);
    const auto neck = slag::angles_and_area(a);
    slag::InvertReport rep;
    const auto b = slag::invert(neck.phi, neck.area, {}, &rep);
    ASSERT_EQ(b.size(), a.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k], a[k], 1e-7 * a[k]);
    EXPECT_LT(rep.residual, 1e-9);
  }
}

TEST(Lawlor, InvertFromPrescribedAngles) {
  // symmetric angles with unit area: all a equal, fixed by the area
  const auto a = slag::invert({kPi / 3, kPi / 3, kPi / 3}, 1.0);
  EXPECT_NEAR(a[0], a[1], 1e-9);
  EXPECT_NEAR(a[1], a[2], 1e-9);
  EXPECT_NEAR(slag::angles_and_area(a).area, 1.0, 1e-8);
}

TEST(Lawlor, RejectsBadInput) {
  expect_code([] { slag::angles_and_area({1.0, 1.0}); }, slag::ErrorCode::DimensionTooSmall);
  expect_code([] { slag::angles_and_area({1.0, -1.0, 1.0}); }, slag::ErrorCode::NonPositiveParameter);
  expect_code([] { slag::invert({1.0, 1.0, 1.0}, 1.0); }, slag::ErrorCode::AngleSumViolation);
  expect_code([] { slag::invert({kPi / 3, kPi / 3, kPi / 3}, 0.0); }, slag::ErrorCode::NonPositiveParameter);
}

TEST(NeckProfile, SpecialLagrangianAlongProfile) {
  const slag::NeckProfile prof(slag::angles_and_area({0.4, 1.0, 2.5}));
  slag::Pcg32 rng(3, 3);
  for (int i = 0; i < 50; ++i) {
    const double y = rng.uniform(-30.0, 30.0);
    std::vector<double> xhat{rng.normal(), rng.normal(), rng.normal()};
    EXPECT_LT(std::abs(slag::profile_phase(prof, y, xhat)), 1e-8);
  }
}

TEST(NeckProfile, EndsApproachThePlanes) {
  // psi_k runs from 0 at y = -inf to phi_k at +inf, through phi_k / 2 at y = 0
  const auto neck = slag::angles_and_area({0.5, 1.0, 2.0});
  const slag::NeckProfile prof(neck);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(prof.psi(k, 0.0), neck.phi[static_cast<std::size_t>(k)] / 2, 1e-9);
    EXPECT_NEAR(prof.psi(k, 0.9 * prof.y_max()), neck.phi[static_cast<std::size_t>(k)], 1e-3);
    EXPECT_NEAR(prof.psi(k, -0.9 * prof.y_max()), 0.0, 1e-3);
  }
}

TEST(NeckProfile, RangeChecked) {
  const slag::NeckProfile prof(slag::angles_and_area({1.0, 1.0, 1.0}));
  expect_code([&] { prof.psi(0, 2.0 * prof.y_max()); }, slag::ErrorCode::OutOfRange);
  expect_code([&] { slag::profile_phase(prof, 0.0, {1.0, 0.0}); }, slag::ErrorCode::InvalidInput);
}

TEST(NeckProfile, DecayExponentIsTwoMinusN) {
  for (int n = 3; n <= 5; ++n) {
    std::vector<double> a(static_cast<std::size_t>(n), 1.0);
    a[0] = 3.0;
    const auto fit = slag::decay_exponent(slag::NeckProfile(slag::angles_and_area(a)));
    EXPECT_NEAR(fit.exponent, 2.0 - n, 0.05);
    EXPECT_LT(fit.residual, 0.05);
  }
}

TEST(NeckProfile, PotentialGapEqualsArea) {
  for (const auto& a : std::vector<std::vector<double>>{{1, 1, 1}, {0.2, 1.5, 7.0}, {0.5, 0.5, 2.0, 3.0}}) {
    const slag::NeckProfile prof(slag::angles_and_area(a));
    const auto gap = slag::potential_gap(prof);
    ASSERT_EQ(gap.g.size(), a.size());
    for (double g : gap.g) EXPECT_NEAR(g, prof.neck().area, 1e-6 * prof.neck().area);
  }
}
