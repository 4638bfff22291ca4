#include <filesystem>

#include "slag/curve_io.hpp"
#include "slag/random.hpp"
#include "slag/stability.hpp"
#include "support.hpp"

using namespace testing_support;

TEST(CurveIo, JsonRoundTripIsExact) {
  const auto L = slag::merge_components(sine(0.37, 64, 0.25), sine(0.1, 32, -1.0));
  const auto back = slag::curve_from_json(slag::curve_to_json(L));
  ASSERT_EQ(back.size(), L.size());
  EXPECT_EQ(back.ambient.kind, L.ambient.kind);
  EXPECT_EQ(back.ambient.circumference, L.ambient.circumference);
  for (std::size_t i = 0; i < L.size(); ++i) {
    EXPECT_EQ(back.samples[i].x, L.samples[i].x);
    EXPECT_EQ(back.samples[i].p, L.samples[i].p);
    EXPECT_EQ(back.samples[i].theta, L.samples[i].theta);
    EXPECT_EQ(back.samples[i].f, L.samples[i].f);
    EXPECT_EQ(back.samples[i].component, L.samples[i].component);
  }
}

TEST(CurveIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "slag_curve_io_test.json";
  auto c = plane_polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  slag::save_curve(c, path);
  const auto back = slag::load_curve(path);
  EXPECT_EQ(back.ambient.kind, slag::AmbientKind::Plane);
  EXPECT_EQ(back.size(), 4u);
  std::filesystem::remove(path);
  expect_code([&] { slag::load_curve(path); }, slag::ErrorCode::IoError);
}

TEST(CurveIo, MalformedInputIsIoError) {
  expect_code([] { slag::curve_from_json("{not json"); }, slag::ErrorCode::IoError);
  expect_code([] { slag::curve_from_json(R"({"version": 99, "samples": []})"); }, slag::ErrorCode::IoError);
  expect_code([] { slag::curve_from_json(R"({"version": 1, "ambient": "torus", "samples": []})"); },
              slag::ErrorCode::IoError);
  expect_code([] { slag::curve_from_json(R"({"version": 1, "ambient": "plane", "samples": [[1, 2]]})"); },
              slag::ErrorCode::IoError);
}

TEST(ChainIo, RoundTrip) {
  slag::Pcg32 rng(5, 5);
  for (bool wide : {false, true}) {
    const auto c = slag::random_chain(rng, 5, wide);
    const auto back = slag::chain_from_json(slag::chain_to_json(c));
    EXPECT_EQ(back.convention, c.convention);
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(back.entries[i].label, c.entries[i].label);
      EXPECT_EQ(back.entries[i].z, c.entries[i].z);
      EXPECT_EQ(back.entries[i].sup_f, c.entries[i].sup_f);
      EXPECT_EQ(back.entries[i].inf_f, c.entries[i].inf_f);
    }
  }
  expect_code([] { slag::chain_from_json(R"({"convention": "left", "entries": []})"); }, slag::ErrorCode::IoError);
}
