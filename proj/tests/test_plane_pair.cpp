#include <Eigen/Dense>

#include "slag/plane_pair.hpp"
#include "slag/random.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

Eigen::MatrixXd special_orthogonal(int n, slag::Pcg32& rng) {
  Eigen::MatrixXd o = slag::random_orthogonal(n, rng);
  if (o.determinant() < 0.0) o.col(0) *= -1.0;
  return o;
}

}  // namespace

TEST(PlanePair, StandardPairAngles) {
  const std::vector<double> phi{0.3, 1.1, 2.0};
  const auto angles = slag::characterizing_angles(slag::standard_pair(phi, 0.0, 3.4));
  ASSERT_EQ(angles.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(angles[i], phi[i], 1e-12);
}

TEST(PlanePair, AnglesInvariantUnderUnitaryAndRealChange) {
  slag::Pcg32 rng(8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(1, 5);
    std::vector<double> phi(static_cast<std::size_t>(n));
    for (auto& p : phi) p = rng.uniform(0.05, kPi - 0.05);
    std::sort(phi.begin(), phi.end());
    const auto base = slag::standard_pair(phi, 0.0, 0.0);
    const Eigen::MatrixXcd U = slag::random_unitary(n, rng);
    const Eigen::MatrixXd O1 = special_orthogonal(n, rng), O2 = special_orthogonal(n, rng);
    slag::LagrangianPlanePair moved = base;
    moved.frame_a = U * base.frame_a * O1.cast<std::complex<double>>();
    moved.frame_b = U * base.frame_b * O2.cast<std::complex<double>>();
    const double shift = std::arg(U.determinant());
    double sum = 0.0;
    for (double p : phi) sum += p;
    moved.theta_a = shift;
    moved.theta_b = shift + sum - kPi * std::floor(sum / kPi);  // any lift of arg det
    const auto got = slag::characterizing_angles(moved);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(got[static_cast<std::size_t>(i)], phi[static_cast<std::size_t>(i)], 1e-9);
    EXPECT_NEAR(slag::floer_degree_value(moved), std::floor(sum / kPi), 1e-9);
  }
}

TEST(PlanePair, LawlorConfigurationHasDegreeOne) {
  EXPECT_EQ(slag::floer_degree(slag::standard_pair({kPi / 3, kPi / 3, kPi / 3}, 0.0, 0.0)), 1);
  EXPECT_EQ(slag::floer_degree(slag::standard_pair({0.5, 1.0, kPi - 1.5}, 0.0, 0.0)), 1);
}

TEST(PlanePair, GradingShiftMovesDegree) {
  const std::vector<double> phi{kPi / 4, kPi / 4, kPi / 2};
  EXPECT_EQ(slag::floer_degree(slag::standard_pair(phi, kPi, 0.0)), 2);
  EXPECT_EQ(slag::floer_degree(slag::standard_pair(phi, 0.0, kPi)), 0);
}

TEST(PlanePair, DualityOnRandomPairs) {
  slag::Pcg32 rng(16, 1);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.uniform_int(1, 6);
    const auto pair = slag::random_graded_pair(n, rng);
    const double v = slag::floer_degree_value(pair);
    EXPECT_NEAR(v, std::round(v), slag::kDegreeTol);
    EXPECT_TRUE(slag::degree_duality_check(pair));
  }
}

TEST(PlanePair, AlmostCalibratedDegreeInRange) {
  slag::Pcg32 rng(16, 2);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.uniform_int(1, 6);
    const int mu = slag::floer_degree(slag::random_graded_pair(n, rng, true));
    EXPECT_GE(mu, 0);
    EXPECT_LE(mu, n);
  }
}

TEST(PlanePair, RandomUnitaryIsUnitary) {
  slag::Pcg32 rng(1, 2);
  const auto U = slag::random_unitary(5, rng);
  EXPECT_LT((U.adjoint() * U - Eigen::MatrixXcd::Identity(5, 5)).norm(), 1e-13);
  const auto O = slag::random_orthogonal(4, rng);
  EXPECT_LT((O.transpose() * O - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-13);
}

TEST(PlanePair, Errors) {
  expect_code([] { slag::characterizing_angles(slag::standard_pair({0.0, 1.0}, 0.0, 1.0)); },
              slag::ErrorCode::NotTransverse);
  expect_code([] { slag::floer_degree(slag::standard_pair({0.5, 0.5}, 0.0, 0.3)); },
              slag::ErrorCode::NonIntegerDegree);
  auto bad = slag::standard_pair({0.5, 0.5}, 0.0, 1.0);
  bad.frame_b(0, 0) *= 2.0;
  expect_code([&] { slag::validate_frames(bad); }, slag::ErrorCode::InvalidInput);
  expect_code([] { slag::validate(slag::standard_pair({0.5, 0.5}, 0.0, 0.3)); }, slag::ErrorCode::InvalidInput);
}

TEST(PlanePair, IndexFromZeros) {
  EXPECT_EQ(slag::index_from_zeros({}, {}, {}, 3), 3);
  EXPECT_EQ(slag::index_from_zeros({1}, {1, -1}, {2}, 2), 6);
}
