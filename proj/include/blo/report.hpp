#pragma once

// Report rows and their CSV / JSON serialisation. Numbers are written with 17
// significant digits so values survive a round trip; the timestamp is the only
// line that differs between identical runs.

#include <string>
#include <vector>

namespace blo {

struct ReportRow {
  std::string quantity;
  std::string parameters;  // "key=value;key=value"
  double value = 0.0;
  std::string witness;
  std::string flags;
};

struct Report {
  std::string experiment;
  std::string config_digest;
  std::vector<ReportRow> rows;
  /// A plain numeric table replaces the generic rows when columns is set.
  std::vector<std::string> columns;
  std::vector<std::vector<double>> table;

  void add(std::string quantity, std::string parameters, double value, std::string witness = {},
           std::string flags = {});
};

std::string format_double(double v);
std::string point_string(double x0, double x1, int dim);

std::string to_csv(const Report& r, const std::string& timestamp);
std::string to_json(const Report& r, const std::string& timestamp);
/// ISO-8601 UTC time of the call.
std::string utc_timestamp();
/// The text with its timestamp line removed.
std::string report_body(const std::string& text);

void write_text(const std::string& path, const std::string& text);

}  // namespace blo
