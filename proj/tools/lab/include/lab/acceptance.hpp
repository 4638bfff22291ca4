#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace lab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  std::filesystem::path out_dir = "acceptance_out";
  std::vector<int> only;  // empty: all of 1..18
};

inline constexpr int kCriteriaCount = 19;

/// Runs criteria 1..18 (or `only`), writing artifacts under out_dir.  Every
/// criterion draws from its own stream seeded by (seed, id).
std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opts,
                                          const std::function<void(const CriterionResult&)>& on_result = {});

/// Criterion 19: reruns the same criteria into `rerun_dir` and byte-compares
/// every artifact with those already in opts.out_dir.
CriterionResult determinism_criterion(const AcceptanceOptions& opts, const std::filesystem::path& rerun_dir);

/// Full suite: criteria, then the determinism rerun into out_dir/rerun.
/// Returns true when everything passed.
bool run_suite(const AcceptanceOptions& opts, const std::function<void(const CriterionResult&)>& on_result);

std::string format_result(const CriterionResult& r);

/// Relative paths whose bytes differ or that exist on one side only.
std::vector<std::string> compare_trees(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace lab
