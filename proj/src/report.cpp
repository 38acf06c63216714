#include "blo/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace blo {

void Report::add(std::string quantity, std::string parameters, double value, std::string witness,
                 std::string flags) {
  rows.push_back({std::move(quantity), std::move(parameters), value, std::move(witness), std::move(flags)});
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_string(double x0, double x1, int dim) {
  return dim == 1 ? format_double(x0) : "(" + format_double(x0) + " " + format_double(x1) + ")";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string to_csv(const Report& r, const std::string& timestamp) {
  std::ostringstream out;
  out << "# timestamp: " << timestamp << "\n";
  out << "# experiment: " << r.experiment << "\n";
  out << "# config_digest: " << r.config_digest << "\n";
  if (!r.columns.empty()) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
    out << "\n";
    for (const auto& row : r.table) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
      out << "\n";
    }
    return out.str();
  }
  out << "quantity,parameters,value,witness,flags\n";
  for (const auto& row : r.rows)
    out << csv_field(row.quantity) << ',' << csv_field(row.parameters) << ',' << format_double(row.value) << ','
        << csv_field(row.witness) << ',' << csv_field(row.flags) << "\n";
  return out.str();
}

std::string to_json(const Report& r, const std::string& timestamp) {
  nlohmann::json j;
  j["timestamp"] = timestamp;
  j["experiment"] = r.experiment;
  j["config_digest"] = r.config_digest;
  nlohmann::json rows = nlohmann::json::array();
  if (!r.columns.empty()) {
    for (const auto& row : r.table) {
      nlohmann::json o;
      for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) o[r.columns[i]] = json_number(row[i]);
      rows.push_back(o);
    }
  } else {
    for (const auto& row : r.rows)
      rows.push_back({{"quantity", row.quantity},
                      {"parameters", row.parameters},
                      {"value", json_number(row.value)},
                      {"witness", row.witness},
                      {"flags", row.flags}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(' ');
    const std::string trimmed = first == std::string::npos ? "" : line.substr(first);
    if (trimmed.rfind("# timestamp:", 0) == 0 || trimmed.rfind("\"timestamp\":", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace blo
