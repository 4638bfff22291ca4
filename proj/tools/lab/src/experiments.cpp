#include "lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "lab/csv.hpp"
#include "lab/parallel.hpp"
#include "slag/curve_io.hpp"
#include "slag/dhym.hpp"
#include "slag/error.hpp"
#include "slag/flow.hpp"
#include "slag/lawlor.hpp"
#include "slag/random.hpp"
#include "slag/solomon.hpp"
#include "slag/stability.hpp"

namespace lab {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using slag::cplx;
constexpr double kPi = std::numbers::pi;

[[noreturn]] void config_error(const std::string& what) { throw slag::Error(slag::ErrorCode::ConfigError, what); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class Runner {
 public:
  Runner(std::string kind, const RunContext& ctx) : kind_(std::move(kind)), ctx_(ctx) {}

  void check(std::string name, bool pass, std::string measured, std::string expected) {
    Check c{std::move(name), pass, std::move(measured), std::move(expected)};
    if (ctx_.log) *ctx_.log << format_check(c) << '\n' << std::flush;
    out_.checks.push_back(std::move(c));
  }

  void write(const CsvTable& table, const std::string& name) {
    const auto path = ctx_.out_dir / name;
    table.write(path);
    out_.artifacts.push_back(path);
  }

  void note(const std::string& key, json value) { extra_[key] = std::move(value); }

  Outcome finish(std::optional<std::uint64_t> seed) {
    json j;
    j["kind"] = kind_;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    for (auto& [k, v] : extra_.items()) j[k] = v;
    j["checks"] = json::array();
    for (const auto& c : out_.checks) {
      j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"expected", c.expected}});
    }
    const auto path = ctx_.out_dir / (kind_ + "_summary.json");
    write_text(path, j.dump(2) + "\n");
    out_.artifacts.push_back(path);
    return std::move(out_);
  }

 private:
  std::string kind_;
  const RunContext& ctx_;
  Outcome out_;
  json extra_ = json::object();
};

std::uint64_t require_seed(const Params& p, const RunContext& ctx, const std::string& kind) {
  if (ctx.seed) return *ctx.seed;
  if (auto s = p.seed("seed")) return *s;
  config_error("kind '" + kind + "' is randomized and needs a seed (config key 'seed' or --seed)");
}

int checked_int(const Params& p, const std::string& key, long long fallback, long long lo, long long hi) {
  const long long v = p.integer(key, fallback);
  if (v < lo || v > hi) {
    config_error("key '" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<double> random_a(slag::Pcg32& rng, int n) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& x : a) x = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
  return a;
}

slag::GradedCurve sine_graph(double t, std::size_t samples) {
  slag::GraphOptions go;
  go.samples = samples;
  return slag::make_graph_curve([t](double x) { return t * std::sin(x); }, 0.0, go,
                                [t](double x) { return t * std::cos(x); });
}

// ---------------------------------------------------------------- lawlor

Outcome lawlor(const Config& cfg, const RunContext& ctx) {
  const Params p(cfg, {"n", "a", "count", "seed", "angle_tol", "gap_tol", "decay_tol", "profile"});
  Runner run("lawlor", ctx);
  std::vector<std::vector<double>> necks;
  std::optional<std::uint64_t> seed;
  if (p.has("a")) {
    if (p.has("count")) config_error("give either 'a' or 'count', not both");
    necks.push_back(p.list("a", {}));
  } else {
    seed = require_seed(p, ctx, "lawlor");
    const int n = checked_int(p, "n", 3, 2, 12);
    const int count = checked_int(p, "count", 10, 1, 100000);
    slag::Pcg32 rng(*seed, 1);
    for (int i = 0; i < count; ++i) necks.push_back(random_a(rng, n));
  }
  const double angle_tol = p.positive("angle_tol", 1e-8);
  const double gap_tol = p.positive("gap_tol", 1e-5);
  const double decay_tol = p.positive("decay_tol", 0.1);
  const bool profile = p.flag("profile", true);
  const std::size_t n = necks.front().size();
  for (const auto& a : necks) {
    if (a.size() != n) config_error("all necks must share n");
  }

  struct Row {
    slag::LawlorNeck neck;
    double decay = std::nan("");
    std::vector<double> g;
    double sl = std::nan("");
  };
  std::vector<Row> rows(necks.size());
  parallel_for(necks.size(), [&](std::size_t i) {
    rows[i].neck = slag::angles_and_area(necks[i]);
    if (!profile) return;
    const slag::NeckProfile prof(rows[i].neck);
    rows[i].decay = slag::decay_exponent(prof).exponent;
    rows[i].g = slag::potential_gap(prof).g;
    // phase residual on a fixed set of profile points
    double w = 0.0;
    const double ymax = std::min(prof.y_max(), 20.0);
    for (int k = 0; k <= 20; ++k) {
      const double y = -ymax + 2.0 * ymax * k / 20.0;
      std::vector<double> xhat(n, 1.0 / std::sqrt(static_cast<double>(n)));
      w = std::max(w, std::abs(slag::profile_phase(prof, y, xhat)));
    }
    rows[i].sl = w;
  });

  std::vector<std::string> header{"n"};
  for (std::size_t k = 1; k <= n; ++k) header.push_back("a" + std::to_string(k));
  for (std::size_t k = 1; k <= n; ++k) header.push_back("phi" + std::to_string(k));
  header.insert(header.end(), {"A", "angle_sum_error", "decay_exponent"});
  for (std::size_t k = 1; k <= n; ++k) header.push_back("g" + std::to_string(k));
  header.push_back("sl_residual_max");
  CsvTable t(header);
  double worst_sum = 0.0, worst_gap = 0.0, worst_decay = 0.0;
  for (const auto& r : rows) {
    std::vector<double> cells{double(n)};
    cells.insert(cells.end(), r.neck.a.begin(), r.neck.a.end());
    cells.insert(cells.end(), r.neck.phi.begin(), r.neck.phi.end());
    double sum = 0.0;
    for (double ph : r.neck.phi) sum += ph;
    worst_sum = std::max(worst_sum, std::abs(sum - kPi));
    cells.insert(cells.end(), {r.neck.area, sum - kPi, r.decay});
    for (std::size_t k = 0; k < n; ++k) {
      const double g = profile ? r.g[k] : std::nan("");
      cells.push_back(g);
      if (profile) worst_gap = std::max(worst_gap, std::abs(g - r.neck.area) / r.neck.area);
    }
    cells.push_back(r.sl);
    if (profile) worst_decay = std::max(worst_decay, std::abs(r.decay - (2.0 - double(n))));
    t.add_numbers(cells);
  }
  run.write(t, "lawlor.csv");
  run.check("angle sum", worst_sum < angle_tol, "max |sum phi - pi| " + sci(worst_sum), "< " + sci(angle_tol));
  if (profile && n >= 3) {
    run.check("potential gap", worst_gap < gap_tol, "max |g_k - A| / A " + sci(worst_gap), "< " + sci(gap_tol));
    run.check("decay exponent", worst_decay < decay_tol, "max |fit - (2 - n)| " + sci(worst_decay),
              "< " + sci(decay_tol));
  }
  return run.finish(seed);
}

// ---------------------------------------------------------------- hn

Outcome hn(const Config& cfg, const RunContext& ctx) {
  const Params p(cfg, {"N", "trials", "wide", "seed"});
  Runner run("hn", ctx);
  const auto seed = require_seed(p, ctx, "hn");
  const int N = checked_int(p, "N", 8, 1, 12);
  const int trials = checked_int(p, "trials", 500, 1, 1000000);
  const bool wide = p.flag("wide", false);
  slag::Pcg32 rng(seed, 7);
  std::vector<slag::ChargeChain> chains;
  for (int i = 0; i < trials; ++i) {
    chains.push_back(slag::random_chain(rng, static_cast<std::size_t>(rng.uniform_int(1, N)), wide));
  }
  std::vector<int> agree(chains.size()), decreasing(chains.size()), blocks(chains.size());
  parallel_for(chains.size(), [&](std::size_t i) {
    const auto a = slag::hn_filtration(chains[i]);
    agree[i] = a == slag::brute_force_hn(chains[i]);
    decreasing[i] = 1;
    for (std::size_t k = 1; k < a.blocks.size(); ++k) decreasing[i] &= a.blocks[k].phase < a.blocks[k - 1].phase;
    blocks[i] = static_cast<int>(a.blocks.size());
  });
  CsvTable t({"trial", "N", "blocks", "agree", "decreasing"});
  int mismatches = 0, unordered = 0;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    mismatches += !agree[i];
    unordered += !decreasing[i];
    t.add_numbers({double(i), double(chains[i].size()), double(blocks[i]), double(agree[i]), double(decreasing[i])});
  }
  run.write(t, "hn.csv");
  run.check("oracle equivalence", mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(trials),
            "0 mismatches");
  run.check("phases decreasing", unordered == 0, std::to_string(unordered) + " unordered", "0");
  return run.finish(seed);
}

// ---------------------------------------------------------------- wall

slag::ChargeFamily table_family(const std::vector<double>& t, const std::vector<double>& re,
                                const std::vector<double>& im) {
  return [t, re, im](double s) {
    if (s <= t.front()) return cplx(re.front(), im.front());
    if (s >= t.back()) return cplx(re.back(), im.back());
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const auto j = static_cast<std::size_t>(it - t.begin());
    const double u = (s - t[j - 1]) / (t[j] - t[j - 1]);
    return cplx(re[j - 1] + u * (re[j] - re[j - 1]), im[j - 1] + u * (im[j] - im[j - 1]));
  };
}

Outcome wall(const Config& cfg, const RunContext& ctx) {
  const Params p(cfg, {"t", "z1_re", "z1_im", "z2_re", "z2_im", "t0", "t1", "steps"});
  Runner run("wall", ctx);
  const auto t = p.list("t", {0.0, 1.0});
  const auto z1r = p.list("z1_re", {1.0, 1.0});
  const auto z1i = p.list("z1_im", {0.5, -0.5});
  const auto z2r = p.list("z2_re", {1.0, 1.0});
  const auto z2i = p.list("z2_im", {0.0, 0.0});
  if (t.size() < 2) config_error("charge table needs at least two rows");
  for (const auto* col : {&z1r, &z1i, &z2r, &z2i}) {
    if (col->size() != t.size()) config_error("charge table columns must match the length of 't'");
  }
  if (!std::is_sorted(t.begin(), t.end()) || std::adjacent_find(t.begin(), t.end()) != t.end()) {
    config_error("'t' must be strictly increasing");
  }
  const double t0 = p.number("t0", t.front());
  const double t1 = p.number("t1", t.back());
  const int steps = checked_int(p, "steps", 400, 2, 10000000);
  const auto scan = slag::wall_scan(table_family(t, z1r, z1i), table_family(t, z2r, z2i), t0, t1, steps);
  run.write(wall_table(scan), "wall.csv");
  json walls = json::array();
  for (const auto& w : scan.walls) {
    walls.push_back({{"t_star", w.t_star},
                     {"area_before", w.area_before},
                     {"area_after", w.area_after},
                     {"side_before", w.side_before},
                     {"side_after", w.side_after}});
  }
  run.note("walls", walls);
  bool sides = true;
  for (const auto& w : scan.walls) sides = sides && w.side_before != w.side_after;
  run.check("walls located", sides, std::to_string(scan.walls.size()) + " wall(s) in [" + sci(t0) + ", " + sci(t1) + "]",
            "gluing side flips at each wall");
  return run.finish(std::nullopt);
}

// ---------------------------------------------------------------- solomon

Outcome solomon(const Config& cfg, const RunContext& ctx) {
  const Params p(cfg, {"t", "samples", "rel_tol"});
  Runner run("solomon", ctx);
  const auto ts = p.list("t", {0.1, 0.3, 1.0});
  const int samples = checked_int(p, "samples", 4096, 16, 1 << 22);
  const double tol = p.positive("rel_tol", 1e-5);
  CsvTable table({"t", "samples", "S", "exact", "rel_error", "observed_order"});
  double worst = 0.0;
  for (double t : ts) {
    const double exact = kPi * t * t / 2.0;
    double prev = std::nan("");
    for (int n : {samples / 4, samples / 2, samples}) {
      slag::GraphOptions go;
      go.samples = static_cast<std::size_t>(n);
      const auto L0 = slag::make_graph_curve([](double) { return 0.0; }, 0.0, go, [](double) { return 0.0; });
      const double s = slag::solomon_functional(sine_graph(t, go.samples), L0).value;
      const double err = exact != 0.0 ? std::abs(s - exact) / exact : std::abs(s);
      const double order = std::log2(prev / err);
      table.add_numbers({t, double(n), s, exact, err, order});
      prev = err;
      if (n == samples) worst = std::max(worst, err);
    }
  }
  run.write(table, "solomon.csv");
  run.check("closed form", worst < tol, "max rel error " + sci(worst), "< " + sci(tol));
  return run.finish(std::nullopt);
}

// ---------------------------------------------------------------- flow

const std::vector<std::string> kFlowKeys{"curve",  "amplitude", "samples", "t_end", "record_dt", "cfl",
                                         "integrator", "radius", "a1",    "a2",    "adapt_c",   "h_min",
                                         "h_max",  "thetahat",  "csv"};

Outcome flow_impl(const Config& cfg, const std::optional<fs::path>& csv_override, const RunContext& ctx) {
  const Params p(cfg, kFlowKeys);
  Runner run("flow", ctx);
  const std::string curve = p.string("curve", "graph");
  const int samples = checked_int(p, "samples", 256, 8, 1 << 20);
  slag::FlowOptions fo;
  fo.cfl = p.positive("cfl", fo.cfl);
  fo.thetahat = p.number("thetahat", 0.0);
  fo.adapt_c = p.number("adapt_c", 0.0);
  fo.h_min = p.number("h_min", 0.0);
  fo.h_max = p.number("h_max", 0.0);
  const std::string integ = p.string("integrator", curve == "graph" ? "euler" : "heun");
  if (integ == "euler") {
    fo.integrator = slag::Integrator::Euler;
  } else if (integ == "heun") {
    fo.integrator = slag::Integrator::Heun;
  } else {
    config_error("integrator must be 'euler' or 'heun'");
  }
  const fs::path csv = csv_override ? *csv_override : ctx.out_dir / p.string("csv", "flow.csv");
  const auto n = static_cast<std::size_t>(samples);

  if (curve == "graph") {
    const double amp = p.number("amplitude", 0.3);
    const double t_end = p.positive("t_end", 10.0);
    const double rec = p.positive("record_dt", 0.01);
    slag::GraphOptions go;
    go.samples = n;
    auto zero = slag::make_graph_curve([](double) { return 0.0; }, 0.0, go, [](double) { return 0.0; });
    const auto res = slag::run_flow(slag::make_flow_state(sine_graph(amp, n), std::move(zero)), t_end, rec, fo);
    flow_table(res.state.history).write(csv);
    const auto m = slag::monotonicity_monitor(res.state);
    const auto e = slag::energy_identity_check(res.state);
    const auto& last = res.state.history.back();
    run.check("theta bounds monotone", m.sup_theta_nonincreasing && m.inf_theta_nondecreasing,
              "osc theta " + sci(last.sup_theta - last.inf_theta) + " at t " + sci(last.t), "sup down, inf up");
    run.check("volume and S nonincreasing", m.volume_nonincreasing && m.solomon_nonincreasing,
              "final S " + sci(last.solomon), "nonincreasing");
    run.check("dS/dt identity", m.dsdt_ok, "max rel error " + sci(m.max_dsdt_rel_err), "< 1.000e-02");
    run.check("energy identity", e.rel_err < 1e-2, "rel error " + sci(e.rel_err), "< 1.000e-02");
  } else if (curve == "circle") {
    const double r0 = p.positive("radius", 1.0);
    const double t_end = p.positive("t_end", 0.495 * r0 * r0);
    const double rec = p.positive("record_dt", 0.005 * r0 * r0);
    const auto res = slag::run_flow(slag::make_flow_state(slag::make_circle(r0, n)), t_end, rec, fo);
    flow_table(res.state.history).write(csv);
    double worst = 0.0;
    for (const auto& r : res.state.history) {
      const double exact2 = r0 * r0 - 2.0 * r.t;
      if (exact2 <= 0.0) break;
      // the volume of a circle is its perimeter 2 pi R
      worst = std::max(worst, std::abs(r.volume / (2.0 * kPi) - std::sqrt(exact2)) / std::sqrt(exact2));
    }
    run.check("circle radius", worst < 1e-3, "max rel error of perimeter radius " + sci(worst), "< 1.000e-03");
  } else if (curve == "figure8") {
    const double a1 = p.positive("a1", 0.5);
    const double a2 = p.positive("a2", 1.0);
    if (!p.has("adapt_c")) {
      fo.adapt_c = 0.03;
      fo.h_min = 2e-4;
      fo.h_max = 0.05;
    }
    if (!p.has("integrator")) fo.integrator = slag::Integrator::Heun;
    const double t_max = p.positive("t_end", 2.0);
    const double rec = p.positive("record_dt", 2e-3);
    const auto rep = slag::figure_eight_run(a1, a2, n, fo, rec, t_max);
    flow_table(rep.run.state.history).write(csv);
    const double small = std::min(a1, a2), large = std::max(a1, a2);
    const double s_fin = a1 <= a2 ? rep.lobe1_final : rep.lobe2_final;
    const double l_fin = a1 <= a2 ? rep.lobe2_final : rep.lobe1_final;
    run.check("halts", rep.run.singular, rep.run.singular ? "t " + sci(rep.run.singular_time) : "no singularity",
              "finite-time singularity");
    run.check("smaller lobe", s_fin < 1e-3 * small, "final / initial " + sci(s_fin / small), "< 1.000e-03");
    run.check("larger lobe", l_fin > 0.5 * large, "final / initial " + sci(l_fin / large), "> 5.000e-01");
    run.check("lobes monotone", rep.smaller_monotone && rep.larger_monotone, "", "both decreasing");
  } else {
    config_error("curve must be graph, circle or figure8");
  }
  run.note("csv", csv.string());
  return run.finish(std::nullopt);
}

// ---------------------------------------------------------------- dhym

Outcome dhym(const Config& cfg, const RunContext& ctx) {
  const Params p(cfg, {"n", "count", "seed", "thetahat", "roundtrip_tol"});
  Runner run("dhym", ctx);
  const int n = checked_int(p, "n", 3, 1, 64);
  const double tol = p.positive("roundtrip_tol", 1e-12);
  std::vector<double> th = p.list("thetahat", {});
  std::optional<std::uint64_t> seed;
  slag::Pcg32 rng(0);
  if (th.empty() || p.has("count")) {
    seed = require_seed(p, ctx, "dhym");
    rng = slag::Pcg32(*seed, 18);
    const int count = checked_int(p, "count", 100, 1, 1000000);
    for (int i = 0; i < count; ++i) th.push_back(rng.uniform(0.0, n * kPi / 2.0));
  }
  CsvTable t({"n", "thetahat", "lambda", "residual"});
  double worst = 0.0;
  for (double v : th) {
    const double lam = slag::solve_symmetric(v, n);
    const double res = std::abs(slag::theta_operator(std::vector<double>(static_cast<std::size_t>(n), lam)) - v);
    worst = std::max(worst, res);
    t.add_numbers({double(n), v, lam, res});
  }
  run.write(t, "dhym.csv");
  CsvTable lim({"scale", "large_phase_error", "large_volume_error"});
  std::vector<double> base(static_cast<std::size_t>(n), 1.0);
  for (std::size_t k = 0; k < base.size(); ++k) base[k] = 1.0 + 0.25 * double(k);
  for (int e = -8; e <= 8; ++e) {
    auto l = base;
    for (auto& x : l) x *= std::pow(2.0, e);
    const auto le = slag::limit_compare(l);
    lim.add_numbers({std::pow(2.0, e), le.large_phase, le.large_volume});
  }
  run.write(lim, "dhym_limits.csv");
  run.check("symmetric round trip", worst < tol, "max residual " + sci(worst), "< " + sci(tol));
  return run.finish(seed);
}

}  // namespace

std::string format_check(const Check& c) {
  std::string s = std::string(c.pass ? "PASS " : "FAIL ") + c.name;
  if (!c.measured.empty()) s += ": " + c.measured;
  if (!c.expected.empty()) s += " | expected " + c.expected;
  return s;
}

bool Outcome::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"lawlor", "hn", "wall", "solomon", "flow", "dhym"};
  return kinds;
}

Outcome run_experiment(const Config& config, const RunContext& ctx) {
  fs::create_directories(ctx.out_dir);
  const auto& k = config.kind;
  if (k == "lawlor") return lawlor(config, ctx);
  if (k == "hn") return hn(config, ctx);
  if (k == "wall") return wall(config, ctx);
  if (k == "solomon") return solomon(config, ctx);
  if (k == "flow") return flow_impl(config, std::nullopt, ctx);
  if (k == "dhym") return dhym(config, ctx);
  config_error("unknown experiment kind '" + k + "'");
}

Outcome run_flow_config(const Config& config, const fs::path& csv, const RunContext& ctx) {
  if (!config.kind.empty() && config.kind != "flow") config_error("config kind is '" + config.kind + "', expected flow");
  fs::create_directories(ctx.out_dir);
  return flow_impl(config, csv, ctx);
}

Outcome solomon_eval(const fs::path& left, const fs::path& ref, const fs::path& out, std::optional<double> thetahat,
                     const RunContext& ctx) {
  const auto L = slag::load_curve(left);
  const auto L0 = slag::load_curve(ref);
  slag::SolomonOptions so;
  so.thetahat = thetahat;
  const auto full = slag::solomon_functional(L, L0, so);

  // every other sample on both curves, potentials rebuilt from the same anchors
  auto coarsen = [](const slag::GradedCurve& c) {
    slag::GradedCurve out = c;
    out.samples.clear();
    for (const auto& r : slag::components(c)) {
      for (std::size_t i = r.begin; i < r.end; i += 2) out.samples.push_back(c.samples[i]);
    }
    slag::recompute_potential(out);
    return out;
  };
  double half = std::nan("");
  try {
    half = slag::solomon_functional(coarsen(L), coarsen(L0), so).value;
  } catch (const slag::Error&) {
    // too coarse to evaluate; the estimate is simply omitted
  }
  const double richardson = full.value + (full.value - half) / 3.0;

  json j;
  j["left"] = left.string();
  j["ref"] = ref.string();
  j["thetahat"] = full.thetahat;
  j["value"] = full.value;
  j["terms"] = {{"potential_L", full.terms.potential_L},
                {"potential_L0", full.terms.potential_L0},
                {"bordism", full.terms.bordism}};
  j["bordism_stokes"] = full.bordism_stokes;
  j["bordism_mass"] = full.bordism_mass;
  j["refinement"] = {{"half_samples_value", std::isfinite(half) ? json(half) : json(nullptr)},
                     {"richardson", std::isfinite(richardson) ? json(richardson) : json(nullptr)},
                     {"error_estimate", std::isfinite(half) ? json(std::abs(full.value - half) / 3.0) : json(nullptr)}};
  write_text(out, j.dump(2) + "\n");

  Runner run("solomon_eval", ctx);
  const double stokes = std::abs(full.terms.bordism - full.bordism_stokes);
  const double scale = 1.0 + std::abs(full.terms.bordism);
  run.check("bordism equals Stokes form", stokes <= 1e-6 * scale, "difference " + sci(stokes),
            "<= 1e-6 relative");
  run.note("report", out.string());
  auto o = run.finish(std::nullopt);
  o.artifacts.push_back(out);
  return o;
}

}  // namespace lab
