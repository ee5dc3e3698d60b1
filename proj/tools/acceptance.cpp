// Runs the acceptance suite and prints one line per criterion.
//   acceptance [--n-max N] [--only 1,4,...] [--expect-fail 5,...]
// Exit status is 0 when the failing criteria are exactly the expected ones.

#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "leg/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  leg::AcceptanceConfig cfg;
  std::vector<int> only, expect_fail;
  app.add_option("--n-max", cfg.n_max)->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed);
  app.add_option("--only", only)->delimiter(',');
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  cfg.only.insert(only.begin(), only.end());

  std::set<int> failed;
  for (const auto& r : leg::run_acceptance(cfg)) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << std::left << std::setw(20)
              << r.key << std::right << "  " << r.detail << "  (" << std::fixed << std::setprecision(2) << r.seconds
              << " s)" << std::defaultfloat << std::endl;
    if (!r.pass) failed.insert(r.id);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::cout << failed.size() << " failed";
  if (!expected.empty()) std::cout << (failed == expected ? " (as expected)" : " (expected a different set)");
  std::cout << "\n";
  return failed == expected ? 0 : 1;
}
