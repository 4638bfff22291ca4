#include "lab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>

#include "lab/csv.hpp"
#include "lab/parallel.hpp"
#include "slag/curve.hpp"
#include "slag/dhym.hpp"
#include "slag/error.hpp"
#include "slag/flow.hpp"
#include "slag/lawlor.hpp"
#include "slag/plane_pair.hpp"
#include "slag/random.hpp"
#include "slag/solomon.hpp"
#include "slag/stability.hpp"

namespace lab {
namespace {

namespace fs = std::filesystem;
using slag::cplx;
using slag::Pcg32;
constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double log_uniform(Pcg32& rng, double lo, double hi) { return std::exp(rng.uniform(std::log(lo), std::log(hi))); }

std::vector<double> random_a(Pcg32& rng, int n) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& x : a) x = log_uniform(rng, 0.1, 10.0);
  return a;
}

std::vector<double> unit_vector(Pcg32& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  } while (norm < 1e-12);
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

struct Trig {
  std::vector<double> c, s;  // coefficients of cos(m x), sin(m x), m = 1..
  double c0 = 0.0;
  double operator()(double x) const {
    double v = c0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double k = static_cast<double>(m + 1);
      v += c[m] * std::cos(k * x) + s[m] * std::sin(k * x);
    }
    return v;
  }
  double d(double x) const {
    double v = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double k = static_cast<double>(m + 1);
      v += k * (-c[m] * std::sin(k * x) + s[m] * std::cos(k * x));
    }
    return v;
  }
};

Trig random_trig(Pcg32& rng, int modes, double amp, double c0 = 0.0) {
  Trig t;
  t.c0 = c0;
  for (int m = 0; m < modes; ++m) {
    t.c.push_back(rng.uniform(-amp, amp));
    t.s.push_back(rng.uniform(-amp, amp));
  }
  return t;
}

slag::GradedCurve graph_of(const Trig& q, std::size_t samples, double anchor) {
  slag::GraphOptions go;
  go.samples = samples;
  return slag::make_graph_curve([&](double x) { return q(x); }, anchor, go, [&](double x) { return q.d(x); });
}

slag::GradedCurve zero_section(std::size_t samples) {
  slag::GraphOptions go;
  go.samples = samples;
  return slag::make_graph_curve([](double) { return 0.0; }, 0.0, go, [](double) { return 0.0; });
}

slag::GradedCurve sine_graph(double t, std::size_t samples) {
  slag::GraphOptions go;
  go.samples = samples;
  return slag::make_graph_curve([t](double x) { return t * std::sin(x); }, 0.0, go,
                                [t](double x) { return t * std::cos(x); });
}

// least-squares slope of y against x
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Context {
  std::uint64_t seed = 42;
  fs::path out;
  std::optional<slag::RunResult> graph_run;
  double graph_seconds = 0.0;

  Pcg32 rng(int id) const { return Pcg32(seed, static_cast<std::uint64_t>(id)); }
  fs::path file(const std::string& name) const { return out / name; }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CriterionResult c01(Context& ctx) {
  CriterionResult r{1, "Lawlor angle sum", false, "", "max |sum phi - pi| < 1e-8, runtime < 10 s", 0};
  auto rng = ctx.rng(1);
  std::vector<std::vector<double>> as(100);
  for (auto& a : as) a = random_a(rng, rng.uniform_int(3, 5));
  const auto t0 = Clock::now();
  std::vector<slag::LawlorNeck> necks(as.size());
  parallel_for(as.size(), [&](std::size_t i) { necks[i] = slag::angles_and_area(as[i]); });
  const double secs = since(t0);
  CsvTable t({"index", "n", "area", "angle_sum_error"});
  double worst = 0.0;
  for (std::size_t i = 0; i < necks.size(); ++i) {
    double sum = 0.0;
    for (double p : necks[i].phi) sum += p;
    worst = std::max(worst, std::abs(sum - kPi));
    t.add_numbers({double(i), double(necks[i].n), necks[i].area, sum - kPi});
  }
  t.write(ctx.file("c01_lawlor_angle_sum.csv"));
  r.pass = worst < 1e-8 && secs < 10.0;
  r.measured = "max error " + sci(worst) + ", " + fixed(secs, 2) + " s";
  return r;
}

CriterionResult c02(Context& ctx) {
  CriterionResult r{2, "Lawlor inversion round trip", false, "", "max ||a - a'|| / ||a|| < 1e-6, runtime < 30 s", 0};
  auto rng = ctx.rng(2);
  std::vector<std::vector<double>> as(50);
  for (auto& a : as) a = random_a(rng, rng.uniform_int(3, 4));
  const auto t0 = Clock::now();
  std::vector<double> err(as.size());
  std::vector<int> iters(as.size());
  parallel_for(as.size(), [&](std::size_t i) {
    const auto neck = slag::angles_and_area(as[i]);
    slag::InvertReport rep;
    const auto b = slag::invert(neck.phi, neck.area, {}, &rep);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      num += (b[k] - as[i][k]) * (b[k] - as[i][k]);
      den += as[i][k] * as[i][k];
    }
    err[i] = std::sqrt(num / den);
    iters[i] = rep.iterations;
  });
  const double secs = since(t0);
  CsvTable t({"index", "n", "relative_error", "iterations"});
  for (std::size_t i = 0; i < as.size(); ++i) t.add_numbers({double(i), double(as[i].size()), err[i], double(iters[i])});
  t.write(ctx.file("c02_lawlor_inversion.csv"));
  const double worst = *std::max_element(err.begin(), err.end());
  r.pass = worst < 1e-6 && secs < 30.0;
  r.measured = "max error " + sci(worst) + ", " + fixed(secs, 2) + " s";
  return r;
}

CriterionResult c03(Context& ctx) {
  CriterionResult r{3, "Lawlor scaling", false, "", "angles and A / lambda^2 invariant to 1e-7 relative", 0};
  auto rng = ctx.rng(3);
  CsvTable t({"instance", "n", "lambda", "phi_rel_error", "area_rel_error"});
  double worst = 0.0;
  for (int inst = 0; inst < 6; ++inst) {
    const auto a = random_a(rng, 3 + inst % 3);
    const auto base = slag::angles_and_area(a);
    for (double lam : {0.5, 2.0, 10.0}) {
      auto b = a;
      for (auto& x : b) x /= lam * lam;
      const auto s = slag::angles_and_area(b);
      double ephi = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) ephi = std::max(ephi, std::abs(s.phi[k] - base.phi[k]) / base.phi[k]);
      const double earea = std::abs(s.area - lam * lam * base.area) / (lam * lam * base.area);
      worst = std::max({worst, ephi, earea});
      t.add_numbers({double(inst), double(a.size()), lam, ephi, earea});
    }
  }
  t.write(ctx.file("c03_lawlor_scaling.csv"));
  r.pass = worst < 1e-7;
  r.measured = "max error " + sci(worst);
  return r;
}

std::vector<std::vector<double>> gap_necks(Pcg32& rng) {
  std::vector<std::vector<double>> out;
  for (int n = 3; n <= 5; ++n) out.emplace_back(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < 10; ++i) out.push_back(random_a(rng, rng.uniform_int(3, 5)));
  return out;
}

CriterionResult c04(Context& ctx) {
  CriterionResult r{4, "Neck potential gap", false, "", "max_k |g_k - A| / A < 1e-5 on 3 symmetric + 10 random necks", 0};
  auto rng = ctx.rng(4);
  const auto necks = gap_necks(rng);
  std::vector<slag::PotentialGap> gaps(necks.size());
  std::vector<double> area(necks.size());
  parallel_for(necks.size(), [&](std::size_t i) {
    const slag::NeckProfile prof(slag::angles_and_area(necks[i]));
    area[i] = prof.neck().area;
    gaps[i] = slag::potential_gap(prof);
  });
  CsvTable t({"neck", "n", "area", "max_rel_dev"});
  double worst = 0.0;
  for (std::size_t i = 0; i < necks.size(); ++i) {
    worst = std::max(worst, gaps[i].max_rel_dev);
    t.add_numbers({double(i), double(necks[i].size()), area[i], gaps[i].max_rel_dev});
  }
  t.write(ctx.file("c04_neck_gap.csv"));
  r.pass = worst < 1e-5;
  r.measured = "max deviation " + sci(worst);
  return r;
}

CriterionResult c05(Context& ctx) {
  CriterionResult r{5, "Neck decay exponent", false, "", "|fitted - (2 - n)| < 0.1 for n = 3, 4, 5", 0};
  auto rng = ctx.rng(5);
  CsvTable t({"n", "symmetric", "exponent", "target", "fit_residual"});
  double worst = 0.0;
  for (int n = 3; n <= 5; ++n) {
    for (int sym = 1; sym >= 0; --sym) {
      const auto a = sym ? std::vector<double>(static_cast<std::size_t>(n), 1.0) : random_a(rng, n);
      const slag::NeckProfile prof(slag::angles_and_area(a));
      const auto fit = slag::decay_exponent(prof);
      worst = std::max(worst, std::abs(fit.exponent - (2.0 - n)));
      t.add_numbers({double(n), double(sym), fit.exponent, 2.0 - n, fit.residual});
    }
  }
  t.write(ctx.file("c05_neck_decay.csv"));
  r.pass = worst < 0.1;
  r.measured = "max |exponent - (2 - n)| " + sci(worst);
  return r;
}

CriterionResult c06(Context& ctx) {
  CriterionResult r{6, "Special Lagrangian residual", false, "", "max |profile phase| < 1e-6, 100 samples per neck", 0};
  auto rng = ctx.rng(6);
  std::vector<std::vector<double>> necks;
  for (int n = 3; n <= 5; ++n) necks.emplace_back(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < 4; ++i) necks.push_back(random_a(rng, rng.uniform_int(3, 5)));
  CsvTable t({"neck", "n", "max_residual"});
  double worst = 0.0;
  for (std::size_t i = 0; i < necks.size(); ++i) {
    const slag::NeckProfile prof(slag::angles_and_area(necks[i]));
    const double amin = *std::min_element(necks[i].begin(), necks[i].end());
    const double ymax = std::min(prof.y_max(), 50.0 / std::sqrt(amin));
    double w = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double y = rng.uniform(-ymax, ymax);
      const auto xhat = unit_vector(rng, prof.neck().n);
      w = std::max(w, std::abs(slag::profile_phase(prof, y, xhat)));
    }
    worst = std::max(worst, w);
    t.add_numbers({double(i), double(necks[i].size()), w});
  }
  t.write(ctx.file("c06_sl_residual.csv"));
  r.pass = worst < 1e-6;
  r.measured = "max residual " + sci(worst);
  return r;
}

CriterionResult c07(Context& ctx) {
  CriterionResult r{7, "HN oracle equivalence", false, "",
                    "hull = brute force on 500 chains (N <= 8), strictly decreasing phases, runtime < 10 s", 0};
  auto rng = ctx.rng(7);
  std::vector<slag::ChargeChain> chains;
  for (int i = 0; i < 500; ++i) {
    chains.push_back(slag::random_chain(rng, static_cast<std::size_t>(rng.uniform_int(1, 8)), i % 2 == 1));
  }
  const auto t0 = Clock::now();
  std::vector<int> agree(chains.size()), decreasing(chains.size()), blocks(chains.size());
  parallel_for(chains.size(), [&](std::size_t i) {
    const auto hull = slag::hn_filtration(chains[i]);
    const auto brute = slag::brute_force_hn(chains[i]);
    agree[i] = hull == brute;
    decreasing[i] = 1;
    for (std::size_t k = 1; k < hull.blocks.size(); ++k) {
      if (!(hull.blocks[k].phase < hull.blocks[k - 1].phase)) decreasing[i] = 0;
    }
    blocks[i] = static_cast<int>(hull.blocks.size());
  });
  const double secs = since(t0);
  CsvTable t({"trial", "N", "blocks", "agree", "decreasing"});
  int bad = 0;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    bad += !agree[i] || !decreasing[i];
    t.add_numbers({double(i), double(chains[i].size()), double(blocks[i]), double(agree[i]), double(decreasing[i])});
  }
  t.write(ctx.file("c07_hn_oracle.csv"));
  r.pass = bad == 0 && secs < 10.0;
  r.measured = std::to_string(bad) + " mismatches, " + fixed(secs, 2) + " s";
  return r;
}

CriterionResult c08(Context& ctx) {
  CriterionResult r{8, "Charge inequality lemmas", false, "",
                    "sum|z| - sum|a| >= -1e-12 on 1e4 tuples; monotone pattern on 100 scans", 0};
  auto rng = ctx.rng(8);
  double min_slack = 1e300;
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto inst = slag::random_lemma2_instance(rng, 6);
    double sz = 0.0, sa = 0.0;
    for (const auto& z : inst.z) sz += std::abs(z);
    for (const auto& a : inst.a) sa += std::abs(a);
    min_slack = std::min(min_slack, sz - sa);
    if (!slag::lemma2_check(inst.a, inst.z)) ++failures;
  }
  int scan_failures = 0;
  CsvTable t({"scan", "re_w", "im_w", "re_z", "violations", "argmin_im"});
  for (int i = 0; i < 100; ++i) {
    const cplx w(rng.uniform(0.2, 3.0), rng.uniform(-3.0, 3.0));
    const double re_z = rng.uniform(0.05, 0.95) * w.real();
    std::vector<double> grid(401);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = -8.0 + 16.0 * double(k) / double(grid.size() - 1);
    const auto rep = slag::lemma1_scan(w, re_z, grid);
    scan_failures += !rep.ok;
    t.add_numbers({double(i), w.real(), w.imag(), re_z, double(rep.violations), rep.argmin_im});
  }
  t.write(ctx.file("c08_lemma_scans.csv"));
  r.pass = failures == 0 && min_slack >= -1e-12 && scan_failures == 0;
  r.measured = "min slack " + sci(min_slack) + ", " + std::to_string(scan_failures) + " failed scans";
  return r;
}

CriterionResult c09(Context& ctx) {
  CriterionResult r{9, "Solomon closed form", false, "",
                    "|S - pi t^2 / 2| / (pi t^2 / 2) < 1e-5 at 4096 samples; observed order in [1.9, 2.1]", 0};
  CsvTable t({"t", "samples", "S", "exact", "rel_error", "bordism", "bordism_stokes"});
  const auto L0 = zero_section(4096);
  double worst = 0.0, worst_order = 0.0;
  std::string orders;
  for (double amp : {0.1, 0.3, 1.0}) {
    const double exact = kPi * amp * amp / 2.0;
    std::vector<double> errs;
    for (std::size_t n : {1024u, 2048u, 4096u}) {
      const auto ev = slag::solomon_functional(sine_graph(amp, n), zero_section(n));
      const double rel = std::abs(ev.value - exact) / exact;
      errs.push_back(rel);
      t.add_numbers({amp, double(n), ev.value, exact, rel, ev.terms.bordism, ev.bordism_stokes});
    }
    worst = std::max(worst, errs.back());
    for (int k = 0; k < 2; ++k) {
      const double order = std::log2(errs[k] / errs[k + 1]);
      worst_order = std::max(worst_order, std::abs(order - 2.0));
      orders += (orders.empty() ? "" : " ") + fixed(order, 3);
    }
  }
  t.write(ctx.file("c09_solomon_closed_form.csv"));
  r.pass = worst < 1e-5 && worst_order <= 0.1;
  r.measured = "max rel error " + sci(worst) + ", orders " + orders;
  return r;
}

CriterionResult c10(Context& ctx) {
  CriterionResult r{10, "Solomon first variation", false, "", "relative error < 1e-3 at dt = 1e-4 on 20 pairs", 0};
  auto rng = ctx.rng(10);
  const auto L0 = zero_section(2048);
  CsvTable t({"pair", "finite_difference", "analytic", "rel_error"});
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Trig q = random_trig(rng, 3, 0.12);
    const Trig h = random_trig(rng, 3, 1.0, rng.uniform(-1.0, 1.0));
    const auto L = graph_of(q, 2048, rng.uniform(-1.0, 1.0));
    const auto fv = slag::first_variation_check(
        L, L0, [&](double x) { return h(x); }, [&](double x) { return h.d(x); }, 1e-4);
    const double rel = std::abs(fv.fd - fv.analytic) / std::abs(fv.analytic);
    worst = std::max(worst, rel);
    t.add_numbers({double(i), fv.fd, fv.analytic, rel});
  }
  t.write(ctx.file("c10_first_variation.csv"));
  r.pass = worst < 1e-3;
  r.measured = "max rel error " + sci(worst);
  return r;
}

CriterionResult c11(Context& ctx) {
  CriterionResult r{11, "Change of reference", false, "", "cocycle and antisymmetry residuals < 1e-9 on 20 triples", 0};
  auto rng = ctx.rng(11);
  CsvTable t({"triple", "cocycle_residual", "antisymmetry_residual"});
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto L = graph_of(random_trig(rng, 3, 0.3), 1024, rng.uniform(-2.0, 2.0));
    const auto L0 = graph_of(random_trig(rng, 3, 0.3), 1024, rng.uniform(-2.0, 2.0));
    const auto L0p = graph_of(random_trig(rng, 3, 0.3), 1024, rng.uniform(-2.0, 2.0));
    const double cocycle = slag::change_of_reference_check(L, L0, L0p);
    slag::SolomonOptions so;
    so.thetahat = 0.0;
    const double anti = std::abs(slag::solomon_functional(L, L0, so).value + slag::solomon_functional(L0, L, so).value);
    worst = std::max({worst, cocycle, anti});
    t.add_numbers({double(i), cocycle, anti});
  }
  t.write(ctx.file("c11_change_of_reference.csv"));
  r.pass = worst < 1e-9;
  r.measured = "max residual " + sci(worst);
  return r;
}

CriterionResult c12(Context& ctx) {
  CriterionResult r{12, "Shift invariance and dichotomy ray", false, "",
                    "S - S_bar shift residual < 1e-10; |dS_bar + c Im(e^{-i thetahat} E_k)| <= 1e-12 scale", 0};
  auto rng = ctx.rng(12);
  CsvTable t({"instance", "S", "S_bar", "shift_residual", "gap", "homological_bound"});
  double worst_shift = 0.0;
  bool bounds = true;
  for (int i = 0; i < 10; ++i) {
    std::vector<slag::GradedCurve> comps;
    const int k = rng.uniform_int(2, 3);
    for (int c = 0; c < k; ++c) comps.push_back(graph_of(random_trig(rng, 2, 0.25), 512, 4.0 * c + rng.uniform(0.0, 0.5)));
    std::vector<slag::GradedCurve> refs;
    for (int c = 0; c < k; ++c) refs.push_back(graph_of(random_trig(rng, 2, 0.1), 512, rng.uniform(-0.5, 0.5)));
    slag::BoundedPartOptions bo;
    bo.thetahat = 0.3;
    bo.cluster_A = 1.0;
    const auto rep = slag::bounded_part_check(comps, slag::union_of(refs), bo);
    worst_shift = std::max(worst_shift, rep.shift_residual);
    bounds = bounds && rep.bound_ok;
    t.add_numbers({double(i), rep.S, rep.S_bar, rep.shift_residual, rep.gap, rep.homological_bound});
  }
  t.write(ctx.file("c12_shift_invariance.csv"));
  CsvTable d({"chain", "N", "k", "c", "delta", "predicted"});
  double worst_ray = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto chain = slag::random_chain(rng, static_cast<std::size_t>(rng.uniform_int(2, 8)));
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(chain.size()) - 1));
    const double c = rng.uniform(-5.0, 5.0);
    const auto ray = slag::dichotomy_ray(chain, k, c);
    worst_ray = std::max(worst_ray, std::abs(ray.delta - ray.predicted) / (1.0 + std::abs(ray.predicted)));
    d.add_numbers({double(i), double(chain.size()), double(k), c, ray.delta, ray.predicted});
  }
  d.write(ctx.file("c12_dichotomy_ray.csv"));
  r.pass = worst_shift < 1e-10 && worst_ray <= 1e-12 && bounds;
  r.measured = "shift residual " + sci(worst_shift) + ", ray residual " + sci(worst_ray) +
               (bounds ? ", bounds hold" : ", bound violated");
  return r;
}

const slag::RunResult& graph_run(Context& ctx) {
  if (!ctx.graph_run) {
    const auto t0 = Clock::now();
    slag::FlowOptions fo;
    auto st = slag::make_flow_state(sine_graph(0.3, 256), zero_section(256));
    ctx.graph_run = slag::run_flow(std::move(st), 10.0, 0.01, fo);
    ctx.graph_seconds = since(t0);
  }
  return *ctx.graph_run;
}

CriterionResult c13(Context& ctx) {
  CriterionResult r{13, "Flow monotonicity", false, "",
                    "sup/inf theta monotone (1e-8/step), volume and S nonincreasing, final S < 1e-4, "
                    "final osc < 1e-3, dS/dt within 1%, runtime < 60 s",
                    0};
  const auto& run = graph_run(ctx);
  const auto& h = run.state.history;
  flow_table(h).write(ctx.file("c13_flow_history.csv"));
  const auto m = slag::monotonicity_monitor(run.state, 1e-8, 1e-2);
  const double final_s = h.back().solomon;
  const double osc = h.back().sup_theta - h.back().inf_theta;
  r.pass = !run.singular && m.steps == 1000 && m.sup_theta_nonincreasing && m.inf_theta_nondecreasing &&
           m.volume_nonincreasing && m.solomon_nonincreasing && m.dsdt_ok && final_s < 1e-4 && osc < 1e-3 &&
           ctx.graph_seconds < 60.0;
  r.measured = std::to_string(m.steps) + " steps, final S " + sci(final_s) + ", osc " + sci(osc) +
               ", max dS/dt error " + sci(m.max_dsdt_rel_err) + ", monotone " +
               (m.sup_theta_nonincreasing && m.inf_theta_nondecreasing && m.volume_nonincreasing &&
                        m.solomon_nonincreasing
                    ? "yes"
                    : "no") +
               ", " + fixed(ctx.graph_seconds, 2) + " s";
  return r;
}

CriterionResult c14(Context& ctx) {
  CriterionResult r{14, "Energy identity", false, "", "relative error < 1e-2", 0};
  const auto& run = graph_run(ctx);
  const auto e = slag::energy_identity_check(run.state);
  CsvTable t({"lhs", "rhs", "rel_error"});
  t.add_numbers({e.lhs, e.rhs, e.rel_err});
  t.write(ctx.file("c14_energy_identity.csv"));
  r.pass = e.rel_err < 1e-2;
  r.measured = "relative error " + sci(e.rel_err);
  return r;
}

CriterionResult c15(Context& ctx) {
  CriterionResult r{15, "Figure-eight singularity", false, "",
                    "halts; smaller < 1e-3 A1, larger > 0.5 A2, both monotone, runtime < 120 s", 0};
  slag::FlowOptions fo;
  fo.integrator = slag::Integrator::Heun;
  fo.adapt_c = 0.03;
  fo.h_min = 2e-4;
  fo.h_max = 0.05;
  const auto t0 = Clock::now();
  const auto rep = slag::figure_eight_run(0.5, 1.0, 256, fo, 2e-3, 1.0);
  const double secs = since(t0);
  flow_table(rep.run.state.history).write(ctx.file("c15_figure_eight.csv"));
  const double small = rep.lobe1_final / rep.a1;
  const double large = rep.lobe2_final / rep.a2;
  r.pass = rep.run.singular && small < 1e-3 && large > 0.5 && rep.smaller_monotone && rep.larger_monotone &&
           rep.kappa_final > 10.0 * rep.kappa_initial && secs < 120.0;
  r.measured = "halt t " + fixed(rep.run.singular_time, 5) + ", smaller/A1 " + sci(small) + ", larger/A2 " +
               fixed(large, 6) + ", max kappa " + fixed(rep.kappa_initial, 1) + " -> " + fixed(rep.kappa_final, 1) +
               ", " + fixed(secs, 2) + " s";
  return r;
}

CriterionResult c16(Context& ctx) {
  CriterionResult r{16, "Floer degree", false, "",
                    "Lawlor pair mu = 1; integer and dual on 200 pairs; almost calibrated mu in [0, n]", 0};
  auto rng = ctx.rng(16);
  bool lawlor_ok = true;
  CsvTable lt({"n", "mu"});
  for (int n = 3; n <= 5; ++n) {
    const auto neck = slag::angles_and_area(random_a(rng, n));
    const int mu = slag::floer_degree(slag::standard_pair(neck.phi, 0.0, 0.0));
    lawlor_ok = lawlor_ok && mu == 1;
    lt.add_numbers({double(n), double(mu)});
  }
  lt.write(ctx.file("c16_lawlor_degree.csv"));
  CsvTable t({"pair", "n", "almost_calibrated", "mu", "mu_swapped", "value"});
  int bad = 0;
  for (int i = 0; i < 400; ++i) {
    const bool ac = i >= 200;
    const int n = rng.uniform_int(1, 5);
    const auto pair = slag::random_graded_pair(n, rng, ac);
    const double v = slag::floer_degree_value(pair);
    const int mu = slag::floer_degree(pair);
    const int mu2 = slag::floer_degree(slag::swapped(pair));
    const bool ok = std::abs(v - std::round(v)) < slag::kDegreeTol && mu + mu2 == n &&
                    (!ac || (mu >= 0 && mu <= n));
    bad += !ok;
    t.add_numbers({double(i), double(n), double(ac), double(mu), double(mu2), v});
  }
  t.write(ctx.file("c16_floer_degree.csv"));
  r.pass = lawlor_ok && bad == 0;
  r.measured = std::string("Lawlor mu = 1: ") + (lawlor_ok ? "yes" : "no") + ", " + std::to_string(bad) + " bad pairs";
  return r;
}

CriterionResult c17(Context& ctx) {
  CriterionResult r{17, "Circle extinction", false, "", "|R - sqrt(R0^2 - 2t)| / sqrt(R0^2 - 2t) < 1e-3 down to R = 0.1 R0",
                    0};
  slag::FlowOptions fo;
  fo.integrator = slag::Integrator::Heun;
  auto st = slag::make_flow_state(slag::make_circle(1.0, 256));
  CsvTable t({"t", "radius", "exact", "rel_error"});
  double worst = 0.0;
  auto area_radius = [](const slag::GradedCurve& c) {
    double a = 0.0;
    const auto& s = c.samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& p = s[i];
      const auto& q = s[(i + 1) % s.size()];
      a += 0.5 * (p.x * q.p - p.p * q.x);
    }
    return std::sqrt(a / kPi);
  };
  for (int k = 0; k <= 99; ++k) {
    const double time = 0.005 * k;
    if (k > 0) st = slag::advance(st, time - st.time, fo);
    const double exact = std::sqrt(1.0 - 2.0 * time);
    const double rad = area_radius(st.curve);
    const double rel = std::abs(rad - exact) / exact;
    worst = std::max(worst, rel);
    t.add_numbers({time, rad, exact, rel});
  }
  t.write(ctx.file("c17_circle.csv"));
  r.pass = worst < 1e-3;
  r.measured = "max rel error " + sci(worst) + " (final R = 0.1)";
  return r;
}

CriterionResult c18(Context& ctx) {
  CriterionResult r{18, "dHYM symmetric solve and limits", false, "",
                    "round trip < 1e-12 on 100 thetahat; error slopes -3 (large phase) and 3 (large volume) within 0.1",
                    0};
  auto rng = ctx.rng(18);
  double worst = 0.0;
  CsvTable t({"sample", "n", "thetahat", "lambda", "residual"});
  for (int i = 0; i < 100; ++i) {
    const int n = rng.uniform_int(1, 6);
    const double th = rng.uniform(0.0, n * kPi / 2.0);
    const double lam = slag::solve_symmetric(th, n);
    const double res = std::abs(slag::theta_operator(std::vector<double>(static_cast<std::size_t>(n), lam)) - th);
    worst = std::max(worst, res);
    t.add_numbers({double(i), double(n), th, lam, res});
  }
  t.write(ctx.file("c18_dhym_roundtrip.csv"));
  std::vector<double> base(4);
  for (auto& x : base) x = rng.uniform(0.5, 2.0);
  CsvTable s({"scale", "large_phase_error", "large_volume_error"});
  std::vector<double> ls_big, le_big, ls_small, le_small;
  for (int k = 3; k <= 8; ++k) {
    const double up = std::pow(2.0, k), down = std::pow(2.0, -k);
    auto big = base, small = base;
    for (auto& x : big) x *= up;
    for (auto& x : small) x *= down;
    const double ep = slag::large_phase_error(big);
    const double ev = slag::large_volume_error(small);
    ls_big.push_back(std::log(up));
    le_big.push_back(std::log(ep));
    ls_small.push_back(std::log(down));
    le_small.push_back(std::log(ev));
    s.add_numbers({up, ep, slag::large_volume_error(big)});
    s.add_numbers({down, slag::limit_compare(small).large_phase, ev});
  }
  s.write(ctx.file("c18_dhym_limits.csv"));
  const double p_big = slope(ls_big, le_big), p_small = slope(ls_small, le_small);
  r.pass = worst < 1e-12 && std::abs(p_big + 3.0) < 0.1 && std::abs(p_small - 3.0) < 0.1;
  r.measured = "round trip " + sci(worst) + ", slopes " + fixed(p_big, 3) + " / " + fixed(p_small, 3);
  return r;
}

using CriterionFn = CriterionResult (*)(Context&);
constexpr CriterionFn kCriteria[] = {c01, c02, c03, c04, c05, c06, c07, c08, c09,
                                     c10, c11, c12, c13, c14, c15, c16, c17, c18};

bool selected(const AcceptanceOptions& opts, int id) {
  return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), id) != opts.only.end();
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opts,
                                          const std::function<void(const CriterionResult&)>& on_result) {
  fs::create_directories(opts.out_dir);
  Context ctx;
  ctx.seed = opts.seed;
  ctx.out = opts.out_dir;
  write_text(ctx.file("seed.txt"), std::to_string(opts.seed) + "\n");
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(std::size(kCriteria)); ++id) {
    if (!selected(opts, id)) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      r = kCriteria[id - 1](ctx);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.pass = false;
      r.measured = std::string("error: ") + e.what();
    }
    r.seconds = since(t0);
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> compare_trees(const fs::path& a, const fs::path& b) {
  std::vector<std::string> diffs;
  auto listing = [](const fs::path& root) {
    std::vector<std::string> files;
    if (!fs::exists(root)) return files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root).generic_string());
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto fa = listing(a), fb = listing(b);
  std::vector<std::string> all;
  std::set_union(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(all));
  for (const auto& f : all) {
    const bool in_a = std::binary_search(fa.begin(), fa.end(), f);
    const bool in_b = std::binary_search(fb.begin(), fb.end(), f);
    if (!in_a || !in_b || read_bytes(a / f) != read_bytes(b / f)) diffs.push_back(f);
  }
  return diffs;
}

CriterionResult determinism_criterion(const AcceptanceOptions& opts, const fs::path& rerun_dir) {
  CriterionResult r{19, "Determinism", false, "", "byte-identical artifacts across two runs with the same seed", 0};
  const auto t0 = Clock::now();
  try {
    fs::remove_all(rerun_dir);
    AcceptanceOptions again = opts;
    again.out_dir = rerun_dir;
    run_criteria(again);
    // only compare the files the criteria write, not the rerun directory itself
    std::vector<std::string> diffs;
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(rerun_dir)) {
      if (!e.is_regular_file()) continue;
      ++files;
      const auto name = e.path().filename();
      if (!fs::exists(opts.out_dir / name) || read_bytes(opts.out_dir / name) != read_bytes(e.path())) {
        diffs.push_back(name.string());
      }
    }
    for (const auto& e : fs::directory_iterator(opts.out_dir)) {
      if (e.is_regular_file() && !fs::exists(rerun_dir / e.path().filename())) diffs.push_back(e.path().filename().string());
    }
    r.pass = diffs.empty() && files > 0;
    r.measured = std::to_string(files) + " artifacts, " + std::to_string(diffs.size()) + " differ";
    if (!diffs.empty()) r.measured += " (first: " + diffs.front() + ")";
  } catch (const std::exception& e) {
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = since(t0);
  return r;
}

bool run_suite(const AcceptanceOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  const auto results = run_criteria(opts, on_result);
  bool ok = std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
  if (!selected(opts, kCriteriaCount)) return ok;
  const auto det = determinism_criterion(opts, opts.out_dir / "rerun");
  if (on_result) on_result(det);
  return ok && det.pass;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s [%02d] ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.title + ": " + r.measured + " | expected " + r.expected + " (" + fixed(r.seconds, 2) +
         " s)";
}

}  // namespace lab
