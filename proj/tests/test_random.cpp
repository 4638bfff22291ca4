#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "slag/random.hpp"

// Reference stream from the PCG distribution's pcg32-demo, srandom(42, 54).
TEST(Pcg32, MatchesReferenceStream) {
  slag::Pcg32 rng(42u, 54u);
  const std::uint32_t expected[] = {0xa15c02b7u, 0x7b47f409u, 0xba1d3330u, 0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
  for (auto e : expected) EXPECT_EQ(rng.next_u32(), e);
}

TEST(Pcg32, StreamsDiffer) {
  slag::Pcg32 a(7, 1), b(7, 2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u32() == b.next_u32();
  EXPECT_LT(same, 2);
}

TEST(Pcg32, UniformRanges) {
  slag::Pcg32 rng(1, 1);
  std::set<int> seen;
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    mean += u;
    const int k = rng.uniform_int(-2, 3);
    ASSERT_GE(k, -2);
    ASSERT_LE(k, 3);
    seen.insert(k);
  }
  EXPECT_NEAR(mean / 20000.0, 0.5, 0.01);
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Pcg32, NormalMoments) {
  slag::Pcg32 rng(3, 9);
  double s = 0.0, s2 = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.03);
}
