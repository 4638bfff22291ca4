#include "slag/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "slag/error.hpp"

namespace slag {
namespace {

constexpr double kPi = std::numbers::pi;

// Im(conj(a) b): positive when b is counterclockwise from a
double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double rel_tol(cplx a, cplx b) { return 1e-12 * std::abs(a) * std::abs(b); }

std::vector<cplx> partial_sums(const ChargeChain& chain) {
  std::vector<cplx> p(chain.size() + 1, 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) p[i + 1] = p[i] + chain.entries[i].z;
  return p;
}

HNFiltration blocks_from_cuts(const ChargeChain& chain, const std::vector<std::size_t>& cuts) {
  // cuts: ascending block boundaries including 0 and N
  const auto p = partial_sums(chain);
  HNFiltration out;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    HNBlock blk;
    blk.begin = cuts[b];
    blk.end = cuts[b + 1];
    blk.charge = p[blk.end] - p[blk.begin];
    if (std::abs(blk.charge) <= 1e-14 * (std::abs(p.back()) + 1.0)) {
      throw Error(ErrorCode::ZeroBlockCharge, "block charge cancels to zero");
    }
    blk.phase = phase(blk.charge, chain.convention);
    out.blocks.push_back(blk);
  }
  return out;
}

}  // namespace

cplx ChargeChain::total() const {
  cplx z = 0.0;
  for (const auto& e : entries) z += e.z;
  return z;
}

double ChargeChain::thetahat() const { return std::arg(total()); }

double phase(cplx z, ChargeConvention convention) {
  if (convention == ChargeConvention::RightHalfPlane) {
    if (!(z.real() > 0.0)) throw Error(ErrorCode::InvalidInput, "charge outside Re Z > 0");
    return std::atan2(z.imag(), z.real());
  }
  if (z.imag() == 0.0 && z.real() < 0.0) return kPi;
  const double a = std::atan2(z.imag(), z.real());
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidInput, "charge outside arg Z in (0, pi]");
  return a;
}

void validate(const ChargeChain& chain) {
  for (const auto& e : chain.entries) {
    if (e.z == cplx(0.0, 0.0)) throw Error(ErrorCode::InvalidInput, "zero charge in chain");
    phase(e.z, chain.convention);
    if (e.inf_f > e.sup_f) throw Error(ErrorCode::InvalidInput, "inf_f exceeds sup_f for " + e.label);
  }
}

bool clustering_ordered(const ChargeChain& chain) {
  double running_sup = -INFINITY;
  for (const auto& e : chain.entries) {
    if (running_sup > e.inf_f) return false;
    running_sup = std::max(running_sup, e.sup_f);
  }
  return true;
}

double HNFiltration::mass() const {
  double m = 0.0;
  for (const auto& b : blocks) m += std::abs(b.charge);
  return m;
}

bool operator==(const HNFiltration& a, const HNFiltration& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].begin != b.blocks[i].begin || a.blocks[i].end != b.blocks[i].end) return false;
  }
  return true;
}

HNFiltration hn_filtration(const ChargeChain& chain) {
  validate(chain);
  if (chain.entries.empty()) return {};
  const auto p = partial_sums(chain);
  std::vector<std::size_t> hull{0};
  for (std::size_t k = 1; k < p.size(); ++k) {
    while (hull.size() >= 2) {
      const cplx e1 = p[hull.back()] - p[hull[hull.size() - 2]];
      const cplx e2 = p[k] - p[hull.back()];
      // keep only strict clockwise turns: phases must strictly decrease
      if (cross(e1, e2) < -rel_tol(e1, e2)) break;
      hull.pop_back();
    }
    hull.push_back(k);
  }
  return blocks_from_cuts(chain, hull);
}

bool satisfies_hn_axioms(const ChargeChain& chain, const std::vector<std::size_t>& cuts) {
  const auto p = partial_sums(chain);
  std::vector<cplx> charges;
  for (std::size_t b = 0; b + 1 < cuts.size(); ++b) {
    const cplx block = p[cuts[b + 1]] - p[cuts[b]];
    if (std::abs(block) <= 1e-14 * (std::abs(p.back()) + 1.0)) return false;
    for (std::size_t k = cuts[b] + 1; k < cuts[b + 1]; ++k) {
      const cplx prefix = p[k] - p[cuts[b]];
      if (std::abs(prefix) == 0.0) continue;
      if (cross(block, prefix) > rel_tol(block, prefix)) return false;
    }
    charges.push_back(block);
  }
  for (std::size_t b = 0; b + 1 < charges.size(); ++b) {
    if (!(cross(charges[b], charges[b + 1]) < -rel_tol(charges[b], charges[b + 1]))) return false;
  }
  return true;
}

HNFiltration brute_force_hn(const ChargeChain& chain) {
  validate(chain);
  const std::size_t n = chain.size();
  if (n == 0) return {};
  if (n > 10) throw Error(ErrorCode::InvalidInput, "brute force limited to N <= 10");
  std::vector<std::vector<std::size_t>> valid;
  const std::size_t masks = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (std::size_t{1} << (i - 1))) cuts.push_back(i);
    }
    cuts.push_back(n);
    if (satisfies_hn_axioms(chain, cuts)) valid.push_back(cuts);
  }
  if (valid.empty()) throw Error(ErrorCode::NoValidFiltration, "no grouping satisfies the HN axioms");
  if (valid.size() > 1) throw Error(ErrorCode::MultipleValidFiltrations, "HN grouping is not unique");
  return blocks_from_cuts(chain, valid.front());
}

std::vector<double> prefix_imaginary_parts(const ChargeChain& chain, std::optional<double> thetahat) {
  const double th = thetahat.value_or(chain.thetahat());
  const cplx rot = std::polar(1.0, -th);
  std::vector<double> out;
  cplx e = 0.0;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    e += chain.entries[k].z;
    out.push_back((rot * e).imag());
  }
  return out;
}

PrefixTest semistable_prefix_test(const ChargeChain& chain, double tol) {
  const auto v = prefix_imaginary_parts(chain);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > tol) return {false, k + 1};
  }
  return {true, std::nullopt};
}

TYResult thomas_yau_classify(const ChargeChain& chain, double tol) {
  const auto v = prefix_imaginary_parts(chain);
  bool strict = true;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] > tol) return {TYClass::Unstable, k + 1};
    if (v[k] >= -tol) strict = false;
  }
  return {strict ? TYClass::StrictlyStable : TYClass::Semistable, std::nullopt};
}

std::string to_string(TYClass c) {
  switch (c) {
    case TYClass::StrictlyStable: return "StrictlyStable";
    case TYClass::Semistable: return "Semistable";
    case TYClass::Unstable: return "Unstable";
  }
  return "Unknown";
}

ObstructionBounds obstruction_bounds(const ChargeChain& chain) {
  validate(chain);
  if (chain.entries.empty()) throw Error(ErrorCode::InvalidInput, "empty chain");
  std::vector<double> ph;
  double mass = 0.0;
  for (const auto& e : chain.entries) {
    ph.push_back(phase(e.z, chain.convention));
    mass += std::abs(e.z);
  }
  for (std::size_t i = 0; i + 1 < ph.size(); ++i) {
    if (!(ph[i] > ph[i + 1])) {
      throw Error(ErrorCode::NotDestabilizing, "phases are not strictly decreasing");
    }
  }
  return {ph.front(), ph.back(), mass};
}

Lemma1Report lemma1_scan(cplx w, double re_z, const std::vector<double>& im_grid) {
  if (!(w.real() > 0.0) || !(re_z > 0.0 && re_z < w.real())) {
    throw Error(ErrorCode::InvalidInput, "need Re w > 0 and 0 < Re z < Re w");
  }
  const double arg_w = std::arg(w);
  auto g = [&](double s) {
    const cplx z(re_z, s);
    return std::abs(z) + std::abs(w - z);
  };
  Lemma1Report rep;
  double best = INFINITY;
  for (std::size_t j = 0; j < im_grid.size(); ++j) {
    const double gj = g(im_grid[j]);
    if (gj < best) {
      best = gj;
      rep.argmin_im = im_grid[j];
    }
    if (j + 1 == im_grid.size()) break;
    const double a0 = std::atan2(im_grid[j], re_z);
    const double a1 = std::atan2(im_grid[j + 1], re_z);
    const double gn = g(im_grid[j + 1]);
    bool bad = false;
    if (a0 <= arg_w && a1 <= arg_w) bad = gn > gj + 1e-12;
    else if (a0 >= arg_w && a1 >= arg_w) bad = gn < gj - 1e-12;
    if (bad) ++rep.violations;
  }
  rep.ok = rep.violations == 0;
  return rep;
}

bool lemma2_check(const std::vector<cplx>& a, const std::vector<cplx>& z) {
  if (a.size() != z.size() || a.empty()) throw Error(ErrorCode::ConstraintViolation, "size mismatch");
  double scale = 0.0;
  for (const auto& v : a) scale += std::abs(v);
  const double tol = 1e-12 * std::max(1.0, scale);
  cplx sa = 0.0, sz = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].real() > 0.0)) throw Error(ErrorCode::ConstraintViolation, "Re a_i must be positive");
    if (i + 1 < a.size() && !(std::arg(a[i]) > std::arg(a[i + 1]))) {
      throw Error(ErrorCode::ConstraintViolation, "arg a_i must strictly decrease");
    }
    if (std::abs(z[i].real() - a[i].real()) > tol) {
      throw Error(ErrorCode::ConstraintViolation, "Re z_i must equal Re a_i");
    }
    sa += a[i];
    sz += z[i];
    if (sz.imag() < sa.imag() - tol) {
      throw Error(ErrorCode::ConstraintViolation, "prefix Im sum of z below that of a");
    }
  }
  if (std::abs(sz - sa) > tol) throw Error(ErrorCode::ConstraintViolation, "sum z must equal sum a");
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lhs += std::abs(z[i]);
    rhs += std::abs(a[i]);
  }
  return lhs >= rhs - 1e-12;
}

Lemma2Instance random_lemma2_instance(Pcg32& rng, int max_n) {
  const int n = rng.uniform_int(1, std::max(1, max_n));
  std::vector<double> args(static_cast<std::size_t>(n));
  for (auto& v : args) v = rng.uniform(-0.5 * kPi + 0.01, 0.5 * kPi - 0.01);
  std::sort(args.begin(), args.end(), std::greater<>());
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!(args[i] < args[i - 1])) args[i] = std::nextafter(args[i - 1], -INFINITY);
  }
  Lemma2Instance inst;
  std::vector<double> d_partial(static_cast<std::size_t>(n) + 1, 0.0);
  for (int m = 1; m < n; ++m) {
    d_partial[static_cast<std::size_t>(m)] = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.0, 2.0);
  }
  for (int i = 0; i < n; ++i) {
    const cplx a = std::polar(rng.uniform(0.1, 3.0), args[static_cast<std::size_t>(i)]);
    const double d = d_partial[static_cast<std::size_t>(i) + 1] - d_partial[static_cast<std::size_t>(i)];
    inst.a.push_back(a);
    inst.z.push_back(a + cplx(0.0, d));
  }
  return inst;
}

double elementary_functional(const ChargeChain& chain, std::optional<double> thetahat) {
  const auto v = prefix_imaginary_parts(chain, thetahat);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (chain.entries[i].sup_f - chain.entries[i + 1].sup_f) * v[i];
  }
  return s;
}

double elementary_functional_full(const ChargeChain& chain, double thetahat, double sup_f0, cplx z0) {
  const cplx rot = std::polar(1.0, -thetahat);
  cplx acc = 0.0;
  for (const auto& e : chain.entries) acc += e.sup_f * rot * e.z;
  return acc.imag() - sup_f0 * (rot * z0).imag();
}

DichotomyRay dichotomy_ray(const ChargeChain& chain, std::size_t k, double c) {
  if (k < 1 || k >= chain.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "dichotomy ray needs 1 <= k <= N-1");
  }
  const double th = chain.thetahat();
  ChargeChain moved = chain;
  for (std::size_t i = k; i < moved.size(); ++i) {
    moved.entries[i].sup_f += c;
    moved.entries[i].inf_f += c;
  }
  DichotomyRay out;
  out.delta = elementary_functional(moved, th) - elementary_functional(chain, th);
  cplx e = 0.0;
  for (std::size_t i = 0; i < k; ++i) e += chain.entries[i].z;
  out.predicted = -c * (std::polar(1.0, -th) * e).imag();
  return out;
}

cplx ChargeTable::operator()(double s) const {
  if (t.empty() || t.size() != z.size()) throw Error(ErrorCode::InvalidInput, "malformed charge table");
  if (s <= t.front()) return z.front();
  if (s >= t.back()) return z.back();
  const auto it = std::upper_bound(t.begin(), t.end(), s);
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  const double w = (s - t[j - 1]) / (t[j] - t[j - 1]);
  return (1.0 - w) * z[j - 1] + w * z[j];
}

double neck_area_parameter(cplx z1, cplx z2) {
  const double theta = std::arg(z1 + z2);
  return std::abs(z1) * std::sin(theta - std::arg(z1));
}

std::string gluing_side(double area) {
  if (area > 0.0) return "gluing exists";
  if (area < 0.0) return "no glued special Lagrangian";
  return "on wall";
}

WallScan wall_scan(const ChargeFamily& z1, const ChargeFamily& z2, double t0, double t1, int steps) {
  if (steps < 1 || !(t1 > t0)) throw Error(ErrorCode::InvalidInput, "wall scan needs t1 > t0 and steps >= 1");
  auto gap = [&](double t) {
    const cplx a = z1(t), b = z2(t);
    if (a == cplx(0.0, 0.0) || b == cplx(0.0, 0.0)) {
      throw Error(ErrorCode::InvalidInput, "charge family vanishes at t = " + std::to_string(t));
    }
    return std::remainder(std::arg(b) - std::arg(a), 2.0 * kPi);
  };
  auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  WallScan out;
  const double h = (t1 - t0) / steps;
  double last_t = 0.0;
  int last_sign = 0;
  for (int j = 0; j <= steps; ++j) {
    const double t = (j == steps) ? t1 : t0 + h * j;
    const cplx a = z1(t), b = z2(t);
    const double area = neck_area_parameter(a, b);
    out.samples.push_back({t, std::arg(a), std::arg(b), std::arg(a + b), area, gluing_side(area)});
    const int s = sign(gap(t));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = last_t, hi = t;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const int sm = sign(gap(mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        (sm == last_sign ? lo : hi) = mid;
      }
      WallCrossing w;
      w.t_star = 0.5 * (lo + hi);
      const double delta = 0.5 * h;
      w.area_before = neck_area_parameter(z1(w.t_star - delta), z2(w.t_star - delta));
      w.area_after = neck_area_parameter(z1(w.t_star + delta), z2(w.t_star + delta));
      w.side_before = gluing_side(w.area_before);
      w.side_after = gluing_side(w.area_after);
      out.walls.push_back(w);
    }
    last_sign = s;
    last_t = t;
  }
  return out;
}

ChargeChain random_chain(Pcg32& rng, std::size_t n, bool wide) {
  ChargeChain chain;
  chain.convention = wide ? ChargeConvention::UpperHalfPlane : ChargeConvention::RightHalfPlane;
  double f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = wide ? rng.uniform(0.02, kPi) : rng.uniform(-0.5 * kPi + 0.02, 0.5 * kPi - 0.02);
    ChargeEntry e;
    e.label = "L" + std::to_string(i + 1);
    e.z = std::polar(rng.uniform(0.1, 2.0), arg);
    e.inf_f = f + rng.uniform(0.0, 1.0);
    e.sup_f = e.inf_f + rng.uniform(0.0, 1.0);
    f = e.sup_f;
    chain.entries.push_back(e);
  }
  return chain;
}

}  // namespace slag
