#pragma once

// Littlewood-Paley g-function truncated to [s_min, s_max], its BLO analysis
// on grids, and the per-ball square-root inequality.

#include <optional>
#include <vector>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"
#include "blo/heat.hpp"
#include "blo/norms.hpp"

namespace blo {

struct SquareFunctionParams {
  double s_min = 1e-6;
  double s_max = 1e3;
  int points_per_decade = 16;

  void validate() const;
  /// s_min 10^{k/ppd} below s_max, then s_max itself.
  std::vector<double> nodes() const;
  SquareFunctionParams extended() const { return {0.5 * s_min, 2.0 * s_max, points_per_decade}; }
};

struct GValue {
  double value = 0.0;    // sqrt of the truncated integral
  double squared = 0.0;  // the truncated integral itself
  /// Estimated change of `squared` if s_min is halved / s_max doubled: ln 2
  /// times the largest integrand over the first / last decade, raised by the
  /// outward slope at that end over one more ln 2.
  double lower_tail = 0.0;
  double upper_tail = 0.0;
  bool truncated = true;
};

/// |s d/ds W_s f(x)|^2 at s.
double g_integrand(const AnalyticFunction& f, const Point& x, double s, int dim, const HeatParams& p = {});

/// Log-trapezoid of the integrand over the lattice nodes in [lo, hi] with lo
/// and hi added as nodes.
double g_integral(const AnalyticFunction& f, const Point& x, double lo, double hi, int dim,
                  const SquareFunctionParams& sp, const HeatParams& p = {});

GValue g_function(const AnalyticFunction& f, const Point& x, int dim, const SquareFunctionParams& sp,
                  const HeatParams& p = {});
/// Upper limit r^2 in place of s_max.
GValue truncated_g(const AnalyticFunction& f, const Point& x, double r, int dim, const SquareFunctionParams& sp,
                   const HeatParams& p = {});

/// g(f) sampled at every cell centre.
GridFunction g_grid(const AnalyticFunction& f, const Domain& d, const SquareFunctionParams& sp,
                    const HeatParams& p = {});

struct GBloReport {
  double bmo = 0.0;             // bmo_norm(f) on the grid
  NormEstimate blo_g_squared;   // blo_norm([g f]^2)
  NormEstimate blo_g;           // blo_norm(g f)
  std::optional<NormEstimate> heat_g_squared;  // grid heat functional of [g f]^2
  double ratio_squared = 0.0;   // blo_norm([g f]^2) / bmo^2
  double ratio = 0.0;           // blo_norm(g f) / bmo
  std::size_t balls_checked = 0;
  std::size_t per_ball_failures = 0;  // balls violating the square-root inequality
  double worst_per_ball_margin = 0.0; // min over balls of rhs - lhs
};

/// Shared pipeline for the squared and first-power checks: g(f) on the grid,
/// then both BLO norms, bmo_norm(f) and the per-ball inequality
/// mean_B g - min_B g <= (mean_B g^2 - min_B g^2)^{1/2}.
GBloReport g_blo_analysis(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls,
                          const SquareFunctionParams& sp, const HeatParams& p = {},
                          const std::optional<TimeGrid>& heat_times = std::nullopt);
GBloReport g_blo_analysis(const AnalyticFunction& f, const GridFunction& g, const std::vector<Ball>& balls,
                          const HeatParams& p = {}, const std::optional<TimeGrid>& heat_times = std::nullopt);

}  // namespace blo
