#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lab/config.hpp"

namespace lab {

struct Check {
  std::string name;
  bool pass = false;
  std::string measured;
  std::string expected;
};

std::string format_check(const Check& c);

struct RunContext {
  std::optional<std::uint64_t> seed;  // --seed overrides the config key
  std::filesystem::path out_dir = ".";
  std::ostream* log = nullptr;  // check lines are echoed here as they finish
};

struct Outcome {
  std::vector<Check> checks;
  std::vector<std::filesystem::path> artifacts;
  bool ok() const;
};

/// Runs one experiment kind (lawlor, hn, wall, solomon, flow, dhym) and
/// writes <kind>.csv plus <kind>_summary.json under ctx.out_dir.
Outcome run_experiment(const Config& config, const RunContext& ctx);

/// Flow from a config, writing its history to `csv`.
Outcome run_flow_config(const Config& config, const std::filesystem::path& csv, const RunContext& ctx);

/// Solomon functional of a curve pair stored as JSON, with a grid
/// refinement estimate; writes the report as JSON to `out`.
Outcome solomon_eval(const std::filesystem::path& left, const std::filesystem::path& ref,
                     const std::filesystem::path& out, std::optional<double> thetahat, const RunContext& ctx);

/// Kinds understood by run_experiment.
const std::vector<std::string>& experiment_kinds();

}  // namespace lab
