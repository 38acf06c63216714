// Runs the acceptance criteria on the shipped default config and prints one
// PASS/FAIL line per criterion. Criterion 11 drives the CLI twice and
// compares report bodies.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "blo/config.hpp"
#include "blo/experiments.hpp"
#include "blo/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

blo::CriterionResult reproducibility(const std::string& config) {
  blo::CriterionResult c{11, "reproducibility", false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  int status[2];
  std::string body[2];
  for (int i = 0; i < 2; ++i) {
    const std::string out = std::string(BLO_BINARY_DIR) + "/reproduce_" + std::to_string(i) + ".csv";
    const std::string cmd = std::string("\"") + BLO_CLI_PATH + "\" reproduce --config \"" + config + "\" --output \"" +
                            out + "\" > \"" + out + ".log\" 2>&1";
    status[i] = std::system(cmd.c_str());
    body[i] = blo::report_body(slurp(out));
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool same = !body[0].empty() && body[0] == body[1];
  c.pass = status[0] == 0 && status[1] == 0 && same && c.seconds < 600.0;
  c.detail = "exit statuses " + std::to_string(status[0]) + "/" + std::to_string(status[1]) + ", bodies " +
             (same ? "identical" : "DIFFER") + ", " + std::to_string(body[0].size()) + " bytes";
  return c;
}

}  // namespace

int main() {
  const std::string config = std::string(BLO_SOURCE_DIR) + "/configs/default.json";
  const blo::ExperimentConfig cfg = blo::load_config(config);
  blo::Report report;
  bool all = true;
  for (const auto& c : blo::run_acceptance(cfg, report, std::cout)) all = all && c.pass;
  const blo::CriterionResult c11 = reproducibility(config);
  std::cout << blo::format_criterion(c11) << std::endl;
  all = all && c11.pass;
  std::cout << (all ? "acceptance: PASS" : "acceptance: FAIL") << std::endl;
  return all ? 0 : 1;
}
