#include "slag/solomon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slag/error.hpp"

namespace slag {
namespace {

double default_thetahat(const GradedCurve& L0, std::optional<double> thetahat) {
  if (thetahat) return *thetahat;
  return std::arg(central_charge(L0));
}

double max_f(const GradedCurve& c) {
  double m = -INFINITY;
  for (const auto& s : c.samples) m = std::max(m, s.f);
  return m;
}

}  // namespace

double potential_term(const GradedCurve& curve, double thetahat) {
  const cplx rot = std::polar(1.0, -thetahat);
  double total = 0.0;
  for (const auto& seg : segments(curve)) {
    const double fbar = 0.5 * (curve.samples[seg.from].f + curve.samples[seg.to].f);
    total += fbar * (rot * seg.dw).imag();
  }
  return total;
}

double stokes_primitive(const GradedCurve& curve, double thetahat) {
  double total = 0.0;
  for (const auto& seg : segments(curve)) {
    const double pa = curve.samples[seg.from].p;
    const double pb = curve.samples[seg.to].p;
    total += seg.dw.real() * (pa * pa + pa * pb + pb * pb) / 3.0;
  }
  return 0.5 * std::cos(thetahat) * total;
}

SolomonEvaluation solomon_functional(const GradedCurve& L, const GradedCurve& L0, const SolomonOptions& opts) {
  SolomonEvaluation ev;
  ev.thetahat = default_thetahat(L0, opts.thetahat);
  BordismChain chain;
  try {
    chain = BordismChain::build(L, L0, opts.bordism);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateIntersection) throw;
    // a vertex sitting exactly on a seam or crossing: move the cut and retry once
    BordismOptions moved = opts.bordism;
    const double c = L.ambient.kind == AmbientKind::Cylinder ? L.ambient.circumference : 1.0;
    moved.seam += c * 0.00012345678901;
    chain = BordismChain::build(L, L0, moved);
  }
  // Im(lambda ^ e^{-i thetahat} Omega) = -cos(thetahat) p dx ^ dp for lambda = -p dx
  ev.terms.bordism = -std::cos(ev.thetahat) * chain.integral_p();
  ev.terms.potential_L = potential_term(L, ev.thetahat);
  ev.terms.potential_L0 = potential_term(L0, ev.thetahat);
  ev.value = ev.terms.potential_L - ev.terms.potential_L0 - ev.terms.bordism;
  ev.bordism_mass = chain.mass();
  ev.bordism_max_abs_p = chain.max_abs_p();
  ev.bordism_stokes = stokes_primitive(L, ev.thetahat) - stokes_primitive(L0, ev.thetahat);
  return ev;
}

GradedCurve hamiltonian_deform(const GradedCurve& curve, const std::function<double(double)>& h,
                               const std::function<double(double)>& dh, double s) {
  GradedCurve out = curve;
  for (auto& smp : out.samples) smp.p -= s * dh(smp.x);
  for (const auto& r : components(out)) {
    out.samples[r.begin].f = curve.samples[r.begin].f + s * h(curve.samples[r.begin].x);
  }
  recompute_potential(out);
  const auto before = segments(curve);
  const auto after = segments(out);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if ((std::conj(before[i].dw) * after[i].dw).real() <= 0.0) {
      throw Error(ErrorCode::StepTooLarge, "deformation folds segment " + std::to_string(i));
    }
  }
  try {
    out = with_phase(std::move(out));
  } catch (const Error&) {
    // theta is not used by the functional; keep the transported values
  }
  return out;
}

FirstVariation first_variation_check(const GradedCurve& L, const GradedCurve& L0,
                                     const std::function<double(double)>& h,
                                     const std::function<double(double)>& dh, double dt,
                                     std::optional<double> thetahat) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidInput, "dt must be positive");
  SolomonOptions opts;
  opts.thetahat = default_thetahat(L0, thetahat);
  const GradedCurve plus = hamiltonian_deform(L, h, dh, dt);
  const GradedCurve minus = hamiltonian_deform(L, h, dh, -dt);
  FirstVariation out;
  out.fd = (solomon_functional(plus, L0, opts).value - solomon_functional(minus, L0, opts).value) / (2.0 * dt);
  const cplx rot = std::polar(1.0, -*opts.thetahat);
  for (const auto& seg : segments(L)) {
    const double hbar = 0.5 * (h(L.samples[seg.from].x) + h(L.samples[seg.to].x));
    out.analytic += hbar * (rot * seg.dw).imag();
  }
  return out;
}

double change_of_reference_check(const GradedCurve& L, const GradedCurve& L0, const GradedCurve& L0p,
                                 std::optional<double> thetahat) {
  SolomonOptions opts;
  opts.thetahat = default_thetahat(L0, thetahat);
  const double a = solomon_functional(L, L0, opts).value;
  const double b = solomon_functional(L, L0p, opts).value;
  const double c = solomon_functional(L0p, L0, opts).value;
  return std::abs(a - b - c);
}

ClusterInput cluster_input(const GradedCurve& curve) {
  ClusterInput in{curve, INFINITY, -INFINITY};
  for (const auto& s : curve.samples) {
    in.inf_f = std::min(in.inf_f, s.f);
    in.sup_f = std::max(in.sup_f, s.f);
  }
  return in;
}

ClusterResult potential_cluster(const std::vector<ClusterInput>& components, double A) {
  std::vector<std::size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (components[i].inf_f != components[j].inf_f) return components[i].inf_f < components[j].inf_f;
    return components[i].sup_f < components[j].sup_f;
  });
  ClusterResult out;
  out.chain.convention = ChargeConvention::RightHalfPlane;
  double hi = -INFINITY;
  for (std::size_t i : order) {
    const auto& c = components[i];
    if (c.inf_f > c.sup_f) throw Error(ErrorCode::InvalidInput, "component f-range is inverted");
    if (out.blocks.empty() || c.inf_f >= hi) {
      out.blocks.push_back({i});
      ChargeEntry e;
      e.label = "B" + std::to_string(out.blocks.size());
      e.inf_f = c.inf_f;
      e.sup_f = c.sup_f;
      out.chain.entries.push_back(e);
    } else {
      out.blocks.back().push_back(i);
      auto& e = out.chain.entries.back();
      e.inf_f = std::min(e.inf_f, c.inf_f);
      e.sup_f = std::max(e.sup_f, c.sup_f);
    }
    hi = std::max(hi, c.sup_f);
    out.chain.entries.back().z += central_charge(c.curve);
  }
  for (const auto& e : out.chain.entries) {
    out.max_oscillation = std::max(out.max_oscillation, e.sup_f - e.inf_f);
    if (e.sup_f - e.inf_f > A) out.oscillation_ok = false;
  }
  out.ordered = clustering_ordered(out.chain);
  return out;
}

GradedCurve union_of(const std::vector<GradedCurve>& parts) {
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty union");
  GradedCurve out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = merge_components(out, parts[i]);
  return out;
}

BoundedPartReport bounded_part_check(const std::vector<GradedCurve>& comps, const GradedCurve& L0,
                                     const BoundedPartOptions& opts) {
  BoundedPartReport rep;
  rep.thetahat = default_thetahat(L0, opts.thetahat);
  std::vector<ClusterInput> inputs;
  for (const auto& c : comps) inputs.push_back(cluster_input(c));
  rep.clusters = potential_cluster(inputs, opts.cluster_A);
  const auto& blocks = rep.clusters.blocks;

  SolomonOptions sopts;
  sopts.thetahat = rep.thetahat;
  const double sup0 = max_f(L0);
  const cplx z0 = central_charge(L0);

  const GradedCurve L = union_of(comps);
  const auto ev = solomon_functional(L, L0, sopts);
  rep.S = ev.value;
  rep.S_bar = elementary_functional_full(rep.clusters.chain, rep.thetahat, sup0, z0);
  rep.gap = std::abs(rep.S - rep.S_bar);

  std::vector<double> shifts = opts.shifts;
  if (shifts.empty()) {
    for (std::size_t i = 0; i < blocks.size(); ++i) shifts.push_back(7.0 * static_cast<double>(i + 1));
  }
  if (shifts.size() != blocks.size()) throw Error(ErrorCode::InvalidInput, "one shift per block required");
  std::vector<GradedCurve> moved = comps;
  ChargeChain moved_chain = rep.clusters.chain;
  const cplx rot = std::polar(1.0, -rep.thetahat);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i : blocks[b]) {
      for (auto& s : moved[i].samples) s.f += shifts[b];
    }
    moved_chain.entries[b].sup_f += shifts[b];
    moved_chain.entries[b].inf_f += shifts[b];
    rep.predicted_shift += shifts[b] * (rot * rep.clusters.chain.entries[b].z).imag();
  }
  rep.shifted_S = solomon_functional(union_of(moved), L0, sopts).value;
  rep.shifted_S_bar = elementary_functional_full(moved_chain, rep.thetahat, sup0, z0);
  rep.shift_residual = std::abs((rep.shifted_S - rep.shifted_S_bar) - (rep.S - rep.S_bar));

  double osc = rep.clusters.max_oscillation;
  const auto ref = cluster_input(L0);
  osc = std::max(osc, ref.sup_f - ref.inf_f);
  rep.homological_bound = std::abs(std::cos(rep.thetahat)) * ev.bordism_max_abs_p * ev.bordism_mass +
                          osc * (polyline_length(L) + polyline_length(L0));
  rep.bound_ok = rep.gap <= rep.homological_bound * (1.0 + 1e-12) + 1e-12;
  double re_omega0 = 0.0;
  for (const auto& seg : segments(L0)) re_omega0 += seg.dw.real();
  const double n_blocks = static_cast<double>(blocks.size());
  rep.floer_bound = rep.clusters.max_oscillation * (4.0 * n_blocks + 2.0) / std::sin(opts.eps) * re_omega0;
  return rep;
}

}  // namespace slag
