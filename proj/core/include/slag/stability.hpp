#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slag/random.hpp"

namespace slag {

using cplx = std::complex<double>;

/// RightHalfPlane: Re Z > 0, phases in (-pi/2, pi/2) (almost-calibrated
/// chain model).  UpperHalfPlane: arg Z in (0, pi] (Bridgeland-style).
enum class ChargeConvention { RightHalfPlane, UpperHalfPlane };

struct ChargeEntry {
  std::string label;
  cplx z;
  double sup_f = 0.0;
  double inf_f = 0.0;
};

struct ChargeChain {
  ChargeConvention convention = ChargeConvention::RightHalfPlane;
  std::vector<ChargeEntry> entries;

  std::size_t size() const { return entries.size(); }
  cplx total() const;
  double thetahat() const;  // arg of the total charge
};

/// Phase of z in the convention's window; throws InvalidInput outside it.
double phase(cplx z, ChargeConvention convention);

/// Nonzero charges inside the window and inf_f <= sup_f per entry.
void validate(const ChargeChain& chain);

/// sup_f[j] <= inf_f[i] for all j < i.
bool clustering_ordered(const ChargeChain& chain);

struct HNBlock {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past last
  cplx charge;
  double phase = 0.0;
};

struct HNFiltration {
  std::vector<HNBlock> blocks;
  double mass() const;  // sum of |block charge|
};

bool operator==(const HNFiltration& a, const HNFiltration& b);  // same index ranges

/// Upper hull of the partial-sum path; collinear partial sums are merged
/// into one block.
HNFiltration hn_filtration(const ChargeChain& chain);

/// Exhaustive search over the 2^{N-1} consecutive groupings (N <= 10).
HNFiltration brute_force_hn(const ChargeChain& chain);

/// True when the grouping satisfies the HN axioms: strictly decreasing
/// block phases and every proper prefix of a block at or below its phase.
bool satisfies_hn_axioms(const ChargeChain& chain, const std::vector<std::size_t>& cuts);

inline constexpr double kStabilityTol = 1e-9;

/// Im(e^{-i thetahat} E_k) for k = 1..N-1, E_k the k-th partial sum.
std::vector<double> prefix_imaginary_parts(const ChargeChain& chain, std::optional<double> thetahat = {});

struct PrefixTest {
  bool ok = true;
  std::optional<std::size_t> witness;  // smallest violating k (1-based)
};

PrefixTest semistable_prefix_test(const ChargeChain& chain, double tol = kStabilityTol);

enum class TYClass { StrictlyStable, Semistable, Unstable };

struct TYResult {
  TYClass kind = TYClass::StrictlyStable;
  std::optional<std::size_t> witness;
};

TYResult thomas_yau_classify(const ChargeChain& chain, double tol = kStabilityTol);
std::string to_string(TYClass c);

struct ObstructionBounds {
  double theta_sup = 0.0;  // sup theta >= this
  double theta_inf = 0.0;  // inf theta <= this
  double jvol = 0.0;       // Vol_J >= this
};

ObstructionBounds obstruction_bounds(const ChargeChain& chain);

struct Lemma1Report {
  bool ok = true;
  std::size_t violations = 0;
  double argmin_im = 0.0;  // grid point of the smallest |z| + |w - z|
};

/// Scans g(s) = |z| + |w - z| over z = re_z + i s for s in im_grid
/// (ascending): nonincreasing while arg z <= arg w, nondecreasing after.
Lemma1Report lemma1_scan(cplx w, double re_z, const std::vector<double>& im_grid);

/// Checks the constraints (throws ConstraintViolation) and returns whether
/// sum |z| >= sum |a| - 1e-12.
bool lemma2_check(const std::vector<cplx>& a, const std::vector<cplx>& z);

struct Lemma2Instance {
  std::vector<cplx> a;
  std::vector<cplx> z;
};

/// Random a with Re > 0 and strictly decreasing arg; z = a + i d where the
/// partial sums of d form a nonnegative sequence vanishing at both ends.
Lemma2Instance random_lemma2_instance(Pcg32& rng, int max_n = 6);

/// Telescoped form sum_{i<N} (sup f_i - sup f_{i+1}) Im(e^{-i thetahat} E_i)
/// with thetahat = arg of the total charge unless overridden.
double elementary_functional(const ChargeChain& chain, std::optional<double> thetahat = {});

/// Untelescoped form Im(sum sup f_i e^{-i thetahat} Z_i) - sup f_0 Im(e^{-i thetahat} Z_0).
double elementary_functional_full(const ChargeChain& chain, double thetahat, double sup_f0, cplx z0);

struct DichotomyRay {
  double delta = 0.0;      // recomputed change of the functional
  double predicted = 0.0;  // -c Im(e^{-i thetahat} E_k)
};

/// Adds c to the potentials of entries k+1..N (k is 1-based, 1 <= k < N)
/// and recomputes the elementary functional.
DichotomyRay dichotomy_ray(const ChargeChain& chain, std::size_t k, double c);

/// Piecewise-linear complex charge family from a sampled table.
struct ChargeTable {
  std::vector<double> t;
  std::vector<cplx> z;
  cplx operator()(double s) const;
};

using ChargeFamily = std::function<cplx(double)>;

struct WallCrossing {
  double t_star = 0.0;
  double area_before = 0.0;  // A(t) just below t_star
  double area_after = 0.0;   // A(t) just above t_star
  std::string side_before;
  std::string side_after;
};

struct WallSample {
  double t = 0.0;
  double arg_z1 = 0.0;
  double arg_z2 = 0.0;
  double theta = 0.0;
  double area = 0.0;
  std::string side;
};

struct WallScan {
  std::vector<WallCrossing> walls;  // empty: no wall in range
  std::vector<WallSample> samples;
};

/// A(t) = |Z1| sin(theta_t - arg Z1) with theta_t = arg(Z1 + Z2).
double neck_area_parameter(cplx z1, cplx z2);
std::string gluing_side(double area);

WallScan wall_scan(const ChargeFamily& z1, const ChargeFamily& z2, double t0, double t1, int steps);

/// Random chain with N entries, RightHalfPlane convention unless wide.
ChargeChain random_chain(Pcg32& rng, std::size_t n, bool wide = false);

}  // namespace slag
