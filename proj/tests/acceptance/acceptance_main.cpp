// One PASS/FAIL line per acceptance criterion; exit status 1 on any failure.

#include <iostream>

#include "CLI11.hpp"
#include "lab/acceptance.hpp"
#include "lab/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"slag acceptance suite"};
  std::string seed = "42", out = "acceptance_out";
  app.add_option("--seed", seed, "Unsigned 64-bit seed");
  app.add_option("--out", out, "Artifact directory");
  CLI11_PARSE(app, argc, argv);

  lab::AcceptanceOptions opts;
  opts.seed = lab::parse_seed(seed);
  opts.out_dir = out;
  int passed = 0, total = 0;
  const bool ok = lab::run_suite(opts, [&](const lab::CriterionResult& r) {
    ++total;
    passed += r.pass;
    std::cout << lab::format_result(r) << '\n' << std::flush;
  });
  std::cout << passed << "/" << total << " criteria passed\n";
  return ok && total == lab::kCriteriaCount ? 0 : 1;
}
