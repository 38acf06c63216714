#pragma once

// Experiment configuration: a JSON document validated against a fixed schema.
// Unknown keys and out-of-range values are rejected with the line of the
// offending key.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"
#include "blo/heat.hpp"
#include "blo/square_function.hpp"

namespace blo {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct EpsilonGridSpec {
  double min = 1e-2;
  double max = 0.9;
  int per_decade = 16;
};

struct ExperimentConfig {
  std::string experiment = "default";
  nlohmann::json function_descriptor = {{"kind", "NegLogAbs"}};
  AnalyticFunction function = AnalyticFunction::neg_log_abs();
  Domain domain{1, 1.0, 4096};
  std::vector<double> radii;  // empty: dyadic
  double margin = 0.0;
  Mode mode = Mode::exact;
  TimeGrid time_grid{1e-2, 1.0, 10};
  EpsilonGridSpec epsilon;
  SquareFunctionParams square{1e-8, 1e4, 16};
  int square_cells_per_axis = 128;
  HeatParams heat;
  double probe_threshold = 10.0;
  int probe_levels = 4;
  int neglog_intervals = 200;
  int neglog_cells_per_axis = 16384;
  double neglog_tolerance = 1e-3;
  int chain_pairs = 1000;
  std::string output_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int threads = 0;

  std::vector<double> effective_radii() const;
  /// Canonical JSON of every field, used for the report digest.
  nlohmann::json to_json() const;
  /// SHA-256 of to_json().dump(), hex.
  std::string digest() const;
};

/// Built-in defaults; configs/default.json spells out the same values.
ExperimentConfig default_config();
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

AnalyticFunction function_from_json(const nlohmann::json& j);

}  // namespace blo
