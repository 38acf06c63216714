#pragma once

// Subcommand runners and the acceptance suite, shared by the CLI and the
// acceptance test binary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blo/config.hpp"
#include "blo/report.hpp"

namespace blo {

struct RunResult {
  Report report;
  bool pass = true;
};

const std::vector<std::string>& subcommand_names();

/// Runs one subcommand. Progress and PASS/FAIL lines go to `log`. Throws
/// NumericError / DomainError from the modules unchanged.
RunResult run_subcommand(const std::string& name, const ExperimentConfig& cfg, std::ostream& log);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criteria 1-10 (the reproducibility criterion needs two CLI runs and lives
/// with the callers). Rows are appended to `report`.
CriterionResult run_criterion(int id, const ExperimentConfig& cfg, Report& report);
std::vector<CriterionResult> run_acceptance(const ExperimentConfig& cfg, Report& report, std::ostream& log);

/// "criterion N (title): PASS|FAIL - detail [1.23 s]"
std::string format_criterion(const CriterionResult& c);

/// The interval family used by criterion 1 and example-neglog: edges on
/// cell boundaries of [-1, 1] with N cells, (0, b) intervals first, then
/// the three sign cases in turn.
struct IntervalSet {
  std::vector<double> a, b;
};
IntervalSet neglog_intervals(int count, int cells_per_axis, std::uint64_t seed);

/// Growth of the ln|x| BLO estimate over (-1/k, 1), k = 2, 4, ..., 2^10, on
/// grids with spacing 1/(8k): exact cell means against the sampled minimum.
std::vector<double> logabs_divergence_sequence(std::vector<int>* ks = nullptr);

}  // namespace blo
