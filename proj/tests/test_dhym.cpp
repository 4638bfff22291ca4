#include "slag/dhym.hpp"
#include "slag/random.hpp"
#include "support.hpp"

using namespace testing_support;

TEST(Dhym, ThetaOperator) {
  EXPECT_NEAR(slag::theta_operator({1.0, 1.0}), kPi / 2, 1e-15);
  EXPECT_NEAR(slag::theta_operator({0.0, -1.0, std::sqrt(3.0)}), -kPi / 4 + kPi / 3, 1e-15);
  expect_code([] { slag::theta_operator({1.0, INFINITY}); }, slag::ErrorCode::InvalidInput);
}

TEST(Dhym, SymmetricSolveRoundTrip) {
  slag::Pcg32 rng(18, 1);
  for (int i = 0; i < 200; ++i) {
    const int n = rng.uniform_int(1, 8);
    const double th = rng.uniform(0.0, n * kPi / 2);
    const double lam = slag::solve_symmetric(th, n);
    EXPECT_NEAR(lam, std::tan(th / n), 1e-12 * (1 + std::abs(lam)));
    EXPECT_NEAR(slag::theta_operator(std::vector<double>(static_cast<std::size_t>(n), lam)), th, 1e-12);
  }
  expect_code([] { slag::solve_symmetric(2.0, 1); }, slag::ErrorCode::PhaseOutOfRange);
  expect_code([] { slag::solve_symmetric(-0.1, 2); }, slag::ErrorCode::PhaseOutOfRange);
  expect_code([] { slag::solve_symmetric(0.1, 0); }, slag::ErrorCode::InvalidInput);
}

// arctan x = pi/2 - 1/x + 1/(3x^3) - ... and arctan x = x - x^3/3 + ...
TEST(Dhym, LimitErrorsFollowTaylorRemainders) {
  const std::vector<double> base{0.7, 1.3, 2.0};
  for (double s : {1e2, 1e3}) {
    std::vector<double> big = base, small = base;
    double rem_big = 0.0, rem_small = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      big[i] *= s;
      small[i] /= s;
      rem_big += 1.0 / (3 * std::pow(big[i], 3));
      rem_small += std::pow(small[i], 3) / 3;
    }
    EXPECT_NEAR(slag::large_phase_error(big) / rem_big, 1.0, 1e-3);
    EXPECT_NEAR(slag::large_volume_error(small) / rem_small, 1.0, 1e-3);
  }
  EXPECT_TRUE(std::isnan(slag::limit_compare({1.0, -1.0}).large_phase));
  expect_code([] { slag::large_phase_error({1.0, 0.0}); }, slag::ErrorCode::NonPositiveEigenvalue);
}

TEST(Dhym, ObstructionPredicate) {
  EXPECT_TRUE(slag::obstruction_predicate({0.0, 1.0}, {1.0, 0.0}));
  EXPECT_FALSE(slag::obstruction_predicate({1.0, -1.0}, {1.0, 0.0}));
  expect_code([] { slag::obstruction_predicate({1.0, 0.0}, {0.0, 0.0}); }, slag::ErrorCode::ZeroDenominator);
}
