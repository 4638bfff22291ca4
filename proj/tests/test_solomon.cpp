#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slag/bordism.hpp"
#include "slag/random.hpp"
#include "slag/solomon.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

struct Trig {
  std::vector<double> c, s;
  double operator()(double x) const {
    double v = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) v += c[m] * std::cos((m + 1.0) * x) + s[m] * std::sin((m + 1.0) * x);
    return v;
  }
  double d(double x) const {
    double v = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      v += (m + 1.0) * (-c[m] * std::sin((m + 1.0) * x) + s[m] * std::cos((m + 1.0) * x));
    }
    return v;
  }
};

Trig random_trig(slag::Pcg32& rng, int modes, double amp) {
  Trig t;
  for (int m = 0; m < modes; ++m) {
    t.c.push_back(rng.uniform(-amp, amp));
    t.s.push_back(rng.uniform(-amp, amp));
  }
  return t;
}

slag::GradedCurve graph_of(const Trig& q, std::size_t n, double anchor = 0.0) {
  return graph([q](double x) { return q(x); }, [q](double x) { return q.d(x); }, n, anchor);
}

double half_square_integral(const std::function<double(double)>& q) {
  boost::math::quadrature::gauss_kronrod<double, 61> gk;
  return 0.5 * gk.integrate([&](double x) { return q(x) * q(x); }, 0.0, 2 * kPi, 20, 1e-15);
}

}  // namespace

// With lambda = -p dx the functional of a zero-mean graph against the zero
// section is (1/2) oint q^2 dx: positive, and quadratic in the amplitude.
TEST(Solomon, ClosedFormOnSineGraph) {
  for (double t : {0.1, 0.3, 1.0}) {
    const auto ev = slag::solomon_functional(sine(t, 4096), zero(4096));
    EXPECT_GT(ev.value, 0.0);
    EXPECT_NEAR(ev.value, kPi * t * t / 2, 1e-5 * kPi * t * t / 2);
  }
}

TEST(Solomon, ClosedFormOnRandomGraphs) {
  slag::Pcg32 rng(31, 1);
  for (int i = 0; i < 8; ++i) {
    const Trig q = random_trig(rng, 3, 0.2);
    const double oracle = half_square_integral([&](double x) { return q(x); });
    const auto ev = slag::solomon_functional(graph_of(q, 4096, rng.uniform(-1, 1)), zero(4096));
    EXPECT_NEAR(ev.value, oracle, 2e-5 * oracle);
  }
}

TEST(Solomon, SecondOrderConvergence) {
  const double exact = kPi * 0.09 / 2;
  const double e1 = std::abs(slag::solomon_functional(sine(0.3, 512), zero(512)).value - exact);
  const double e2 = std::abs(slag::solomon_functional(sine(0.3, 1024), zero(1024)).value - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
}

TEST(Solomon, TermsOnSineGraph) {
  // f = t (cos x - 1), so int f dp = pi t^2 and the bordism term carries pi t^2 / 2
  const double t = 0.5;
  const auto ev = slag::solomon_functional(sine(t, 4096), zero(4096));
  EXPECT_NEAR(ev.terms.potential_L, kPi * t * t, 1e-5);
  EXPECT_NEAR(ev.terms.potential_L0, 0.0, 1e-14);
  EXPECT_NEAR(ev.terms.bordism, kPi * t * t / 2, 1e-5);
  EXPECT_NEAR(ev.terms.bordism, ev.bordism_stokes, 1e-12);
  EXPECT_NEAR(ev.bordism_mass, 4 * t, 1e-5);
  EXPECT_NEAR(ev.bordism_max_abs_p, t, 1e-6);
  EXPECT_NEAR(slag::stokes_primitive(sine(t, 4096), 0.0), kPi * t * t / 2, 1e-5);
}

TEST(Solomon, PotentialConstantDropsOut) {
  const auto a = slag::solomon_functional(sine(0.4, 1024, 0.0), zero(1024)).value;
  const auto b = slag::solomon_functional(sine(0.4, 1024, 5.0), zero(1024)).value;
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(Solomon, ChangeOfReferenceAndAntisymmetry) {
  slag::Pcg32 rng(11, 11);
  for (int i = 0; i < 10; ++i) {
    const auto L = graph_of(random_trig(rng, 3, 0.3), 512, rng.uniform(-2, 2));
    const auto L0 = graph_of(random_trig(rng, 3, 0.3), 512, rng.uniform(-2, 2));
    const auto L0p = graph_of(random_trig(rng, 3, 0.3), 512, rng.uniform(-2, 2));
    EXPECT_LT(slag::change_of_reference_check(L, L0, L0p), 1e-10);
    slag::SolomonOptions so;
    so.thetahat = 0.0;
    EXPECT_NEAR(slag::solomon_functional(L, L0, so).value, -slag::solomon_functional(L0, L, so).value, 1e-10);
  }
}

TEST(Solomon, FirstVariationMatchesFiniteDifference) {
  slag::Pcg32 rng(10, 1);
  for (int i = 0; i < 5; ++i) {
    const Trig q = random_trig(rng, 2, 0.15);
    const Trig h = random_trig(rng, 3, 1.0);
    const auto fv = slag::first_variation_check(
        graph_of(q, 2048), zero(2048), [&](double x) { return h(x); }, [&](double x) { return h.d(x); }, 1e-4);
    EXPECT_NEAR(fv.fd, fv.analytic, 1e-3 * std::abs(fv.analytic));
  }
}

TEST(Solomon, HamiltonianDeformMovesGraph) {
  const auto L = sine(0.3, 256);
  const auto M = slag::hamiltonian_deform(L, [](double x) { return std::cos(x); },
                                          [](double x) { return -std::sin(x); }, 0.2);
  for (std::size_t i = 0; i < L.size(); ++i) {
    EXPECT_NEAR(M.samples[i].x, L.samples[i].x, 1e-15);
    EXPECT_NEAR(M.samples[i].p, L.samples[i].p + 0.2 * std::sin(L.samples[i].x), 1e-14);
  }
  EXPECT_LT(slag::exactness_defect(M), 1e-12);
}

TEST(Bordism, MultiplicityMatchesRayCount) {
  const auto L = graph([](double x) { return 0.6 * std::sin(x) + 0.3 * std::cos(3 * x); },
                       [](double x) { return 0.6 * std::cos(x) - 0.9 * std::sin(3 * x); }, 300);
  const auto L0 = graph([](double x) { return 0.2 * std::sin(2 * x); },
                        [](double x) { return 0.4 * std::cos(2 * x); }, 170);
  const auto C = slag::BordismChain::build(L, L0);
  EXPECT_EQ(C.boundary_defect(), 0);
  slag::Pcg32 rng(2, 2);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(0.0, 2 * kPi), p = rng.uniform(-1.5, 1.5);
    const int m = C.multiplicity(x, p);
    EXPECT_EQ(m, C.ray_count(x, p));
    EXPECT_LE(std::abs(m), 1);
  }
  EXPECT_EQ(C.multiplicity(1.0, 10.0), 0);
  EXPECT_EQ(C.multiplicity(1.0, -10.0), 0);
}

TEST(Bordism, DirectionAndSeamIndependence) {
  const auto L = sine(0.7, 400);
  const auto L0 = graph([](double x) { return -0.2 * std::cos(x); }, [](double x) { return 0.2 * std::sin(x); }, 333);
  const double ref = slag::BordismChain::build(L, L0).integral_p();
  slag::BordismOptions up;
  up.direction = slag::RayDirection::Up;
  EXPECT_NEAR(slag::BordismChain::build(L, L0, up).integral_p(), ref, 1e-12);
  for (double seam : {0.5, 2.0, 4.4}) {
    slag::BordismOptions o;
    o.seam = seam;
    EXPECT_NEAR(slag::BordismChain::build(L, L0, o).integral_p(), ref, 1e-12);
  }
  // exact value: (1/2) int (q^2 - q0^2) dx up to orientation
  const double oracle = 0.5 * (kPi * 0.49 - kPi * 0.04);
  EXPECT_NEAR(std::abs(ref), oracle, 1e-4);
}

TEST(Bordism, NonHomologousCurvesRejected) {
  // p = 0.3 sin(x / 2) over two turns: closes up after winding twice
  slag::GradedCurve twice;
  twice.ambient = slag::Ambient::cylinder();
  for (int k = 0; k < 256; ++k) {
    const double x = 4 * kPi * k / 256;
    twice.samples.push_back({x, 0.3 * std::sin(x / 2), 0.0, 0.0, 0});
  }
  twice = slag::with_phase(twice);
  slag::recompute_potential(twice);
  EXPECT_EQ(slag::winding_number(twice, 0), 2);
  expect_code([&] { slag::BordismChain::build(twice, zero(64)); }, slag::ErrorCode::HomologyMismatch);
}

TEST(Solomon, ClusteringAndShiftInvariance) {
  std::vector<slag::GradedCurve> comps{sine(0.2, 256, 0.0), sine(0.1, 256, 5.0)};
  const auto L0 = slag::union_of({zero(256), zero(256)});
  slag::BoundedPartOptions bo;
  bo.thetahat = 0.3;
  const auto rep = slag::bounded_part_check(comps, L0, bo);
  ASSERT_EQ(rep.clusters.blocks.size(), 2u);
  EXPECT_TRUE(rep.clusters.ordered);
  EXPECT_LT(rep.shift_residual, 1e-10);
  EXPECT_TRUE(rep.bound_ok);

  // overlapping potential ranges fall into one block
  std::vector<slag::ClusterInput> in{slag::cluster_input(sine(0.2, 64, 0.0)), slag::cluster_input(sine(0.2, 64, 0.1))};
  const auto cl = slag::potential_cluster(in, 10.0);
  EXPECT_EQ(cl.blocks.size(), 1u);
  EXPECT_NEAR(cl.chain.entries[0].z.real(), 4 * kPi, 1e-12);
  EXPECT_FALSE(slag::potential_cluster(in, 1e-3).oscillation_ok);
}
