#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lab/acceptance.hpp"
#include "lab/config.hpp"
#include "lab/experiments.hpp"
#include "slag/error.hpp"

namespace {

struct KindArgs {
  std::string config;
  std::string seed;
  std::string out = ".";
};

void add_common(CLI::App* sub, KindArgs& args) {
  sub->add_option("--config", args.config, "Config file (TOML-style or JSON)");
  sub->add_option("--seed", args.seed, "Unsigned 64-bit seed (overrides the config)");
  sub->add_option("--out", args.out, "Output directory");
}

lab::RunContext context(const KindArgs& args) {
  lab::RunContext ctx;
  if (!args.seed.empty()) ctx.seed = lab::parse_seed(args.seed);
  ctx.out_dir = args.out;
  ctx.log = &std::cout;
  return ctx;
}

lab::Config config_for(const std::string& kind, const KindArgs& args) {
  lab::Config cfg;
  if (!args.config.empty()) cfg = lab::load_config(args.config);
  if (cfg.kind.empty()) cfg.kind = kind;
  if (cfg.kind != kind) {
    throw slag::Error(slag::ErrorCode::ConfigError, "config kind '" + cfg.kind + "' does not match '" + kind + "'");
  }
  return cfg;
}

std::vector<int> parse_only(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || id < 1 || id > lab::kCriteriaCount) {
      throw slag::Error(slag::ErrorCode::ConfigError, "--only expects criterion numbers 1.." +
                                                          std::to_string(lab::kCriteriaCount) + ", got '" + item + "'");
    }
    ids.push_back(id);
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slag-lab: experiments and acceptance checks for the slag library"};
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::string>> kinds;
  std::vector<KindArgs> kind_args(lab::experiment_kinds().size());
  for (std::size_t i = 0; i < lab::experiment_kinds().size(); ++i) {
    const auto& k = lab::experiment_kinds()[i];
    auto* sub = app.add_subcommand(k, "Run the " + k + " experiment");
    add_common(sub, kind_args[i]);
    kinds.emplace_back(sub, k);
  }
  CLI::App* flow = kinds[4].first;
  CLI::App* solomon = kinds[3].first;

  KindArgs flow_run_args;
  std::string flow_csv = "flow.csv";
  auto* flow_run = flow->add_subcommand("run", "Run a flow from a config and write its history");
  add_common(flow_run, flow_run_args);
  flow_run->add_option("--csv", flow_csv, "History CSV path");

  KindArgs eval_args;
  std::string left, ref, eval_out = "solomon_eval.json";
  std::optional<double> thetahat;
  auto* eval = solomon->add_subcommand("eval", "Evaluate the Solomon functional on two stored curves");
  eval->add_option("--left", left, "Curve JSON")->required();
  eval->add_option("--ref", ref, "Reference curve JSON")->required();
  eval->add_option("--out", eval_out, "Report JSON path");
  eval->add_option("--thetahat", thetahat, "Phase (default arg Z of the reference)");

  std::string suite_seed = "42", suite_out = "acceptance_out", suite_only;
  auto* suite = app.add_subcommand("suite", "Run the acceptance suite");
  suite->add_option("--seed", suite_seed, "Unsigned 64-bit seed");
  suite->add_option("--out", suite_out, "Artifact directory");
  suite->add_option("--only", suite_only, "Comma-separated criterion numbers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) {
      lab::AcceptanceOptions opts;
      opts.seed = lab::parse_seed(suite_seed);
      opts.out_dir = suite_out;
      opts.only = parse_only(suite_only);
      const bool ok = lab::run_suite(opts, [](const lab::CriterionResult& r) {
        std::cout << lab::format_result(r) << '\n' << std::flush;
      });
      return ok ? 0 : 1;
    }
    if (flow_run->parsed()) {
      const auto ctx = context(flow_run_args);
      if (flow_run_args.config.empty()) throw slag::Error(slag::ErrorCode::ConfigError, "flow run needs --config");
      return lab::run_flow_config(config_for("flow", flow_run_args), flow_csv, ctx).ok() ? 0 : 1;
    }
    if (eval->parsed()) {
      KindArgs none;
      return lab::solomon_eval(left, ref, eval_out, thetahat, context(none)).ok() ? 0 : 1;
    }
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      if (!kinds[i].first->parsed()) continue;
      const auto& args = kind_args[i];
      return lab::run_experiment(config_for(kinds[i].second, args), context(args)).ok() ? 0 : 1;
    }
  } catch (const slag::Error& e) {
    std::cerr << "slag-lab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "slag-lab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
