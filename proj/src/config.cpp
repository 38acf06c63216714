#include "blo/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace blo {

using nlohmann::json;

namespace {

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

/// Tracks where in the raw text an object's keys live, so schema errors can
/// name a line. Keys are found by their first quoted occurrence after the
/// parent key.
class Cursor {
 public:
  Cursor(const std::string* text, std::size_t from) : text_(text), from_(from) {}

  std::size_t find(const std::string& key) const {
    if (!text_) return std::string::npos;
    return text_->find("\"" + key + "\"", from_);
  }
  int line(const std::string& key) const {
    if (!text_) return 0;
    const std::size_t p = find(key);
    return line_at(*text_, p == std::string::npos ? from_ : p);
  }
  int here() const { return text_ ? line_at(*text_, from_) : 0; }
  Cursor child(const std::string& key) const {
    const std::size_t p = find(key);
    return Cursor(text_, p == std::string::npos ? from_ : p);
  }

 private:
  const std::string* text_;
  std::size_t from_;
};

void require_object(const json& j, const Cursor& c, const std::string& what) {
  if (!j.is_object()) throw ConfigError(c.here(), what + " must be an object");
}

void check_keys(const json& j, const Cursor& c, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(c.line(it.key()), "unknown key '" + it.key() + "' in " + where);
}

double number(const json& j, const Cursor& c, const std::string& key, double fallback, bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(c.here(), "missing required key '" + key + "'");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(c.line(key), "'" + key + "' must be a number");
  return v.get<double>();
}

long long integer(const json& j, const Cursor& c, const std::string& key, long long fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(c.line(key), "'" + key + "' must be an integer");
  return v.get<long long>();
}

std::string text(const json& j, const Cursor& c, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(c.line(key), "'" + key + "' must be a string");
  return v.get<std::string>();
}

Point point(const json& j, const Cursor& c, const std::string& key) {
  if (!j.contains(key)) return Point{};
  const json& v = j.at(key);
  if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(kMaxDim))
    throw ConfigError(c.line(key), "'" + key + "' must be an array of 1 or 2 numbers");
  Point p{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(c.line(key), "'" + key + "' must contain numbers");
    p[i] = v[i].get<double>();
  }
  return p;
}

AnalyticFunction parse_function(const json& j, const Cursor& c) {
  require_object(j, c, "function");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError(c.here(), "function needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  auto keys = [&](std::set<std::string> allowed) {
    allowed.insert("kind");
    check_keys(j, c, allowed, "function " + kind);
  };
  try {
    if (kind == "Constant") {
      keys({"c"});
      return AnalyticFunction::constant(number(j, c, "c", 0.0, true));
    }
    if (kind == "Linear") {
      keys({});
      return AnalyticFunction::linear();
    }
    if (kind == "NegLogAbs") {
      keys({});
      return AnalyticFunction::neg_log_abs();
    }
    if (kind == "LogAbs") {
      keys({});
      return AnalyticFunction::log_abs();
    }
    if (kind == "PowerLawWeight") {
      keys({"alpha"});
      const double alpha = number(j, c, "alpha", 0.0, true);
      if (!(alpha > 0.0)) throw ConfigError(c.line("alpha"), "PowerLawWeight needs alpha > 0");
      return AnalyticFunction::power_law(alpha);
    }
    if (kind == "GaussianBump") {
      keys({"a"});
      return AnalyticFunction::gaussian_bump(number(j, c, "a", 0.0, true));
    }
    if (kind == "Indicator") {
      keys({"center", "radius"});
      return AnalyticFunction::indicator(Ball{point(j, c, "center"), number(j, c, "radius", 0.0, true)});
    }
    if (kind == "BoundedSine") {
      keys({"amplitude", "frequency"});
      return AnalyticFunction::bounded_sine(number(j, c, "amplitude", 0.0, true),
                                            number(j, c, "frequency", 0.0, true));
    }
    if (kind == "Shifted") {
      keys({"base", "by"});
      if (!j.contains("base")) throw ConfigError(c.here(), "Shifted needs 'base'");
      return AnalyticFunction::shifted(parse_function(j.at("base"), c.child("base")), point(j, c, "by"));
    }
    if (kind == "Scaled") {
      keys({"base", "lambda"});
      if (!j.contains("base")) throw ConfigError(c.here(), "Scaled needs 'base'");
      return AnalyticFunction::scaled(parse_function(j.at("base"), c.child("base")),
                                      number(j, c, "lambda", 0.0, true));
    }
    if (kind == "Sum") {
      keys({"base", "bounded"});
      if (!j.contains("base") || !j.contains("bounded")) throw ConfigError(c.here(), "Sum needs 'base' and 'bounded'");
      return AnalyticFunction::sum(parse_function(j.at("base"), c.child("base")),
                                   parse_function(j.at("bounded"), c.child("bounded")));
    }
  } catch (const DomainError& e) {
    throw ConfigError(c.here(), e.what());
  }
  throw ConfigError(c.line("kind"), "unknown function kind '" + kind + "'");
}

template <class F>
void checked(int line, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    throw ConfigError(line, e.what());
  }
}

ExperimentConfig parse(const json& root, const Cursor& c) {
  require_object(root, c, "config");
  check_keys(root, c,
             {"experiment", "function", "dimension", "half_width", "cells_per_axis", "radii", "margin", "mode",
              "time_grid", "epsilon_grid", "square_function", "heat", "probe", "example_neglog", "pde", "output",
              "seed", "threads"},
             "config");
  ExperimentConfig cfg;
  cfg.experiment = text(root, c, "experiment", cfg.experiment);
  if (root.contains("function")) {
    cfg.function_descriptor = root.at("function");
    cfg.function = parse_function(root.at("function"), c.child("function"));
  }
  cfg.domain.dimension = static_cast<int>(integer(root, c, "dimension", cfg.domain.dimension));
  cfg.domain.half_width = number(root, c, "half_width", cfg.domain.half_width);
  cfg.domain.cells_per_axis = static_cast<int>(integer(root, c, "cells_per_axis", cfg.domain.cells_per_axis));
  checked(c.line("cells_per_axis"), [&] { cfg.domain.validate(); });
  checked(c.line("function"), [&] { cfg.function.validate(cfg.domain.dimension); });

  if (root.contains("radii")) {
    const json& r = root.at("radii");
    if (r.is_string()) {
      if (r.get<std::string>() != "dyadic") throw ConfigError(c.line("radii"), "radii must be \"dyadic\" or a list");
    } else if (r.is_array() && !r.empty()) {
      for (const json& v : r) {
        if (!v.is_number() || !(v.get<double>() > 0.0))
          throw ConfigError(c.line("radii"), "radii must be positive numbers");
        cfg.radii.push_back(v.get<double>());
      }
    } else {
      throw ConfigError(c.line("radii"), "radii must be \"dyadic\" or a nonempty list");
    }
  }
  cfg.margin = number(root, c, "margin", cfg.margin);
  if (!(cfg.margin >= 0.0)) throw ConfigError(c.line("margin"), "margin must be nonnegative");
  const std::string mode = text(root, c, "mode", "exact");
  if (mode != "grid" && mode != "exact") throw ConfigError(c.line("mode"), "mode must be \"grid\" or \"exact\"");
  cfg.mode = mode == "grid" ? Mode::grid : Mode::exact;

  if (root.contains("time_grid")) {
    const json& t = root.at("time_grid");
    const Cursor tc = c.child("time_grid");
    require_object(t, tc, "time_grid");
    check_keys(t, tc, {"t_min", "t_max", "points_per_decade"}, "time_grid");
    cfg.time_grid.t_min = number(t, tc, "t_min", cfg.time_grid.t_min);
    cfg.time_grid.t_max = number(t, tc, "t_max", cfg.time_grid.t_max);
    cfg.time_grid.points_per_decade =
        static_cast<int>(integer(t, tc, "points_per_decade", cfg.time_grid.points_per_decade));
    checked(tc.here(), [&] { cfg.time_grid.validate(); });
  }
  if (root.contains("epsilon_grid")) {
    const json& e = root.at("epsilon_grid");
    const Cursor ec = c.child("epsilon_grid");
    require_object(e, ec, "epsilon_grid");
    check_keys(e, ec, {"min", "max", "per_decade"}, "epsilon_grid");
    cfg.epsilon.min = number(e, ec, "min", cfg.epsilon.min);
    cfg.epsilon.max = number(e, ec, "max", cfg.epsilon.max);
    cfg.epsilon.per_decade = static_cast<int>(integer(e, ec, "per_decade", cfg.epsilon.per_decade));
    if (!(cfg.epsilon.min > 0.0) || !(cfg.epsilon.max >= cfg.epsilon.min) || cfg.epsilon.per_decade < 1)
      throw ConfigError(ec.here(), "epsilon_grid needs 0 < min <= max and per_decade >= 1");
  }
  if (root.contains("square_function")) {
    const json& s = root.at("square_function");
    const Cursor sc = c.child("square_function");
    require_object(s, sc, "square_function");
    check_keys(s, sc, {"s_min", "s_max", "points_per_decade", "cells_per_axis"}, "square_function");
    cfg.square.s_min = number(s, sc, "s_min", cfg.square.s_min);
    cfg.square.s_max = number(s, sc, "s_max", cfg.square.s_max);
    cfg.square.points_per_decade = static_cast<int>(integer(s, sc, "points_per_decade", cfg.square.points_per_decade));
    cfg.square_cells_per_axis = static_cast<int>(integer(s, sc, "cells_per_axis", cfg.square_cells_per_axis));
    checked(sc.here(), [&] {
      cfg.square.validate();
      Domain d = cfg.domain;
      d.cells_per_axis = cfg.square_cells_per_axis;
      d.validate();
    });
  }
  if (root.contains("heat")) {
    const json& h = root.at("heat");
    const Cursor hc = c.child("heat");
    require_object(h, hc, "heat");
    check_keys(h, hc, {"truncation_multiple", "quadrature", "tail_tolerance", "max_extent"}, "heat");
    cfg.heat.truncation_multiple = number(h, hc, "truncation_multiple", cfg.heat.truncation_multiple);
    cfg.heat.tail_tolerance = number(h, hc, "tail_tolerance", cfg.heat.tail_tolerance);
    cfg.heat.max_extent = number(h, hc, "max_extent", cfg.heat.max_extent);
    const std::string q = text(h, hc, "quadrature", "exact_cell_integrals");
    if (q == "exact_cell_integrals")
      cfg.heat.quadrature = HeatQuadrature::exact_cell_integrals;
    else if (q == "midpoint_on_cells")
      cfg.heat.quadrature = HeatQuadrature::midpoint_on_cells;
    else
      throw ConfigError(hc.line("quadrature"), "quadrature must be exact_cell_integrals or midpoint_on_cells");
    checked(hc.here(), [&] { cfg.heat.validate(); });
  }
  if (root.contains("probe")) {
    const json& p = root.at("probe");
    const Cursor pc = c.child("probe");
    require_object(p, pc, "probe");
    check_keys(p, pc, {"threshold", "levels"}, "probe");
    cfg.probe_threshold = number(p, pc, "threshold", cfg.probe_threshold);
    cfg.probe_levels = static_cast<int>(integer(p, pc, "levels", cfg.probe_levels));
    if (!(cfg.probe_threshold >= 1.0) || cfg.probe_levels < 1 || cfg.probe_levels > 8)
      throw ConfigError(pc.here(), "probe needs threshold >= 1 and 1 <= levels <= 8");
  }
  if (root.contains("example_neglog")) {
    const json& x = root.at("example_neglog");
    const Cursor xc = c.child("example_neglog");
    require_object(x, xc, "example_neglog");
    check_keys(x, xc, {"intervals", "cells_per_axis", "tolerance"}, "example_neglog");
    cfg.neglog_intervals = static_cast<int>(integer(x, xc, "intervals", cfg.neglog_intervals));
    cfg.neglog_cells_per_axis = static_cast<int>(integer(x, xc, "cells_per_axis", cfg.neglog_cells_per_axis));
    cfg.neglog_tolerance = number(x, xc, "tolerance", cfg.neglog_tolerance);
    if (cfg.neglog_intervals < 3 || cfg.neglog_cells_per_axis < 64 || cfg.neglog_cells_per_axis % 2 != 0 ||
        !(cfg.neglog_tolerance > 0.0))
      throw ConfigError(xc.here(), "example_neglog needs intervals >= 3, even cells_per_axis >= 64, tolerance > 0");
  }
  if (root.contains("pde")) {
    const json& x = root.at("pde");
    const Cursor xc = c.child("pde");
    require_object(x, xc, "pde");
    check_keys(x, xc, {"pairs"}, "pde");
    cfg.chain_pairs = static_cast<int>(integer(x, xc, "pairs", cfg.chain_pairs));
    if (cfg.chain_pairs < 1) throw ConfigError(xc.line("pairs"), "pde.pairs must be positive");
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    const Cursor oc = c.child("output");
    require_object(o, oc, "output");
    check_keys(o, oc, {"path", "format"}, "output");
    cfg.output_path = text(o, oc, "path", cfg.output_path);
    cfg.format = text(o, oc, "format", cfg.format);
    if (cfg.format != "csv" && cfg.format != "json")
      throw ConfigError(oc.line("format"), "output.format must be csv or json");
  }
  if (root.contains("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigError(c.line("seed"), "seed must be a nonnegative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  cfg.threads = static_cast<int>(integer(root, c, "threads", cfg.threads));
  if (cfg.threads < 0) throw ConfigError(c.line("threads"), "threads must be nonnegative");
  return cfg;
}

}  // namespace

std::vector<double> ExperimentConfig::effective_radii() const {
  return radii.empty() ? dyadic_radii(domain) : radii;
}

json ExperimentConfig::to_json() const {
  json r = radii.empty() ? json("dyadic") : json(radii);
  return json{
      {"experiment", experiment},
      {"function", function_descriptor},
      {"dimension", domain.dimension},
      {"half_width", domain.half_width},
      {"cells_per_axis", domain.cells_per_axis},
      {"radii", r},
      {"margin", margin},
      {"mode", to_string(mode)},
      {"time_grid",
       {{"t_min", time_grid.t_min}, {"t_max", time_grid.t_max}, {"points_per_decade", time_grid.points_per_decade}}},
      {"epsilon_grid", {{"min", epsilon.min}, {"max", epsilon.max}, {"per_decade", epsilon.per_decade}}},
      {"square_function",
       {{"s_min", square.s_min},
        {"s_max", square.s_max},
        {"points_per_decade", square.points_per_decade},
        {"cells_per_axis", square_cells_per_axis}}},
      {"heat",
       {{"truncation_multiple", heat.truncation_multiple},
        {"quadrature", heat.quadrature == HeatQuadrature::exact_cell_integrals ? "exact_cell_integrals"
                                                                                : "midpoint_on_cells"},
        {"tail_tolerance", heat.tail_tolerance},
        {"max_extent", heat.max_extent}}},
      {"probe", {{"threshold", probe_threshold}, {"levels", probe_levels}}},
      {"example_neglog",
       {{"intervals", neglog_intervals}, {"cells_per_axis", neglog_cells_per_axis}, {"tolerance", neglog_tolerance}}},
      {"pde", {{"pairs", chain_pairs}}},
      {"output", {{"path", output_path}, {"format", format}}},
      {"seed", seed},
      {"threads", threads},
  };
}

std::string ExperimentConfig::digest() const {
  json j = to_json();
  // Where the report goes and how many threads write it do not change its body.
  j.erase("output");
  j.erase("threads");
  const std::string s = j.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& raw) {
  json root;
  try {
    root = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_at(raw, e.byte == 0 ? 0 : e.byte - 1), std::string("malformed JSON: ") + e.what());
  }
  return parse(root, Cursor(&raw, 0));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

AnalyticFunction function_from_json(const json& j) { return parse_function(j, Cursor(nullptr, 0)); }

}  // namespace blo
