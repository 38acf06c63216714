#include "blo/square_function.hpp"

#include <cmath>
#include <limits>

#include "blo/reduce.hpp"

namespace blo {

void SquareFunctionParams::validate() const {
  if (!(s_min > 0.0) || !(s_min < s_max) || !std::isfinite(s_max))
    throw DomainError("square function needs 0 < s_min < s_max");
  if (points_per_decade < 1) throw DomainError("square function points_per_decade must be positive");
}

std::vector<double> SquareFunctionParams::nodes() const {
  validate();
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double s = s_min * std::pow(10.0, static_cast<double>(k) / points_per_decade);
    if (s >= s_max * (1.0 - 1e-12)) break;
    out.push_back(s);
  }
  out.push_back(s_max);
  return out;
}

double g_integrand(const AnalyticFunction& f, const Point& x, double s, int dim, const HeatParams& p) {
  const double v = apply_tdt_heat(f, x, s, dim, p);
  return v * v;
}

namespace {

struct Sweep {
  double integral = 0.0;
  double head_max = 0.0;  // largest integrand within a decade of the lower end
  double tail_max = 0.0;  // largest integrand within a decade of the upper end
  // Growth of the integrand per unit log s beyond each end, extrapolated
  // from the last two nodes (0 when it decays outward).
  double head_slope = 0.0;
  double tail_slope = 0.0;
};

Sweep sweep(const AnalyticFunction& f, const Point& x, double lo, double hi, int dim,
            const SquareFunctionParams& sp, const HeatParams& p) {
  if (!(lo > 0.0) || !(lo < hi)) throw DomainError("g integral needs 0 < lo < hi");
  std::vector<double> s{lo};
  for (double v : sp.nodes())
    if (v > lo * (1.0 + 1e-12) && v < hi * (1.0 - 1e-12)) s.push_back(v);
  s.push_back(hi);
  std::vector<double> q(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) q[i] = g_integrand(f, x, s[i], dim, p);
  Sweep out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out.integral += 0.5 * (q[i] + q[i + 1]) * std::log(s[i + 1] / s[i]);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= 10.0 * lo) out.head_max = std::max(out.head_max, q[i]);
    if (s[i] >= 0.1 * hi) out.tail_max = std::max(out.tail_max, q[i]);
  }
  const std::size_t n = s.size();
  out.head_slope = std::max(0.0, (q[0] - q[1]) / std::log(s[1] / s[0]));
  out.tail_slope = std::max(0.0, (q[n - 1] - q[n - 2]) / std::log(s[n - 1] / s[n - 2]));
  if (out.integral < 0.0) throw NumericError("g_function", "negative quadrature result");
  return out;
}

GValue finish(const Sweep& w) {
  GValue g;
  g.squared = w.integral;
  g.value = std::sqrt(w.integral);
  const double ln2 = std::log(2.0);
  g.lower_tail = (w.head_max + w.head_slope * ln2) * ln2;
  g.upper_tail = (w.tail_max + w.tail_slope * ln2) * ln2;
  return g;
}

}  // namespace

double g_integral(const AnalyticFunction& f, const Point& x, double lo, double hi, int dim,
                  const SquareFunctionParams& sp, const HeatParams& p) {
  return sweep(f, x, lo, hi, dim, sp, p).integral;
}

GValue g_function(const AnalyticFunction& f, const Point& x, int dim, const SquareFunctionParams& sp,
                  const HeatParams& p) {
  sp.validate();
  return finish(sweep(f, x, sp.s_min, sp.s_max, dim, sp, p));
}

GValue truncated_g(const AnalyticFunction& f, const Point& x, double r, int dim, const SquareFunctionParams& sp,
                   const HeatParams& p) {
  sp.validate();
  if (!(r > 0.0) || !(r * r > sp.s_min)) throw DomainError("truncated_g needs r^2 > s_min");
  return finish(sweep(f, x, sp.s_min, r * r, dim, sp, p));
}

GridFunction g_grid(const AnalyticFunction& f, const Domain& d, const SquareFunctionParams& sp,
                    const HeatParams& p) {
  d.validate();
  f.validate(d.dimension);
  GridFunction g{d, std::vector<double>(d.cell_count()), "g:" + f.describe(), std::nullopt, std::nullopt, 0};
  parallel_for(g.values.size(),
               [&](std::size_t k) { g.values[k] = g_function(f, d.cell_center(k), d.dimension, sp, p).value; });
  return g;
}

GBloReport g_blo_analysis(const AnalyticFunction& f, const GridFunction& g, const std::vector<Ball>& balls,
                          const HeatParams& p, const std::optional<TimeGrid>& heat_times) {
  if (!f.classification().is_bmo) throw DomainError("g_blo_analysis: " + f.describe() + " is not BMO");
  GridFunction g2 = g;
  for (double& v : g2.values) v *= v;
  g2.provenance = "g^2:" + f.describe();

  GBloReport r;
  r.bmo = bmo_norm(sample(f, g.domain), balls).value;
  r.blo_g_squared = blo_norm(g2, balls);
  r.blo_g = blo_norm(g, balls);
  if (heat_times) r.heat_g_squared = heat_blo_functional(g2, *heat_times, p);
  if (r.bmo > 0.0) {
    r.ratio_squared = r.blo_g_squared.value / (r.bmo * r.bmo);
    r.ratio = r.blo_g.value / r.bmo;
  }

  const BallIndex gi(g, Mode::grid), g2i(g2, Mode::grid);
  r.balls_checked = balls.size();
  r.worst_per_ball_margin = std::numeric_limits<double>::infinity();
  for (const Ball& b : balls) {
    const double lhs = gi.mean(b) - gi.minimum(b);
    const double rhs = std::sqrt(std::max(0.0, g2i.mean(b) - g2i.minimum(b)));
    r.worst_per_ball_margin = std::min(r.worst_per_ball_margin, rhs - lhs);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) ++r.per_ball_failures;
  }
  return r;
}

GBloReport g_blo_analysis(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls,
                          const SquareFunctionParams& sp, const HeatParams& p,
                          const std::optional<TimeGrid>& heat_times) {
  return g_blo_analysis(f, g_grid(f, d, sp, p), balls, p, heat_times);
}

}  // namespace blo
