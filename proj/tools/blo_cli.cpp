// Command-line entry point: one subcommand per experiment, plus `reproduce`
// for the whole acceptance suite. Exit codes: 0 pass, 1 numeric failure,
// 2 configuration or usage error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "blo/config.hpp"
#include "blo/experiments.hpp"
#include "blo/report.hpp"
#include "blo/types.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-semigroup experiments for BLO functions"};
  std::string config_path, output, format;
  int threads = 0;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomised sampling (overrides the config)");
  app.add_option("--config", config_path, "Experiment config (JSON); built-in defaults when omitted");
  app.add_option("--output", output, "Report path; stdout when neither this nor the config names one");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.require_subcommand(1, 1);
  const std::map<std::string, std::string> help{
      {"norms", "BLO/BMO norms of the configured function (divergence rows for ln|x|)"},
      {"heat-char", "heat-defect functional against the BLO norm"},
      {"weights", "A1 constants of exp(eps f), maximal and heat forms"},
      {"nfunc", "N(f) = min over eps of log C0(eps)/eps"},
      {"gfunc", "truncated g-function and the BLO norms of g and g^2"},
      {"pde", "regularity defect, oscillation, maximum principle, comparison chain"},
      {"example-neglog", "interval defects of -ln|x| against the closed form"},
      {"reproduce", "acceptance criteria 1-10 with the configured parameters"}};
  for (const auto& name : blo::subcommand_names()) {
    const auto it = help.find(name);
    app.add_subcommand(name, it == help.end() ? "" : it->second)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string subcommand = app.get_subcommands().front()->get_name();

  blo::ExperimentConfig cfg;
  try {
    cfg = config_path.empty() ? blo::default_config() : blo::load_config(config_path);
  } catch (const blo::ConfigError& e) {
    std::cerr << "config error: " << config_path << ":" << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!output.empty()) cfg.output_path = output;
  if (!format.empty()) cfg.format = format;
  if (*seed_opt) cfg.seed = seed;
  if (threads > 0) cfg.threads = threads;
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  blo::RunResult result;
  try {
    result = blo::run_subcommand(subcommand, cfg, std::cout);
  } catch (const blo::NumericError& e) {
    std::cerr << "numeric failure in " << e.operation() << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const blo::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }

  const std::string stamp = blo::utc_timestamp();
  const std::string text = cfg.format == "json" ? blo::to_json(result.report, stamp) : blo::to_csv(result.report, stamp);
  try {
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      blo::write_text(cfg.output_path, text);
      std::cout << "report written to " << cfg.output_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  std::cout << subcommand << ": " << (result.pass ? "PASS" : "FAIL") << "\n";
  return result.pass ? kExitPass : kExitNumeric;
}
