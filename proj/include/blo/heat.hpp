#pragma once

// Gaussian heat kernel, the semigroup W_t on analytic sources and on grids,
// and the kernel of s d/ds W_s.

#include <vector>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"

namespace blo {

enum class HeatQuadrature {
  midpoint_on_cells,     // rough leaf boxes use f(centre) * |box|
  exact_cell_integrals,  // rough leaf boxes use the exact integral of f
};

struct HeatParams {
  /// Integration runs over the cube |y - x|_inf <= R sqrt(t).
  double truncation_multiple = 12.0;
  HeatQuadrature quadrature = HeatQuadrature::exact_cell_integrals;
  /// Grid convolution drops taps whose weight falls below this fraction of
  /// the central tap.
  double tail_tolerance = 1e-12;
  /// |x| + R sqrt(t) beyond this is refused for analytic sources.
  double max_extent = 1e6;

  void validate() const;
  /// Gaussian mass outside the truncation cube, per the union bound.
  double tail_mass(int dim) const;
};

/// Log-spaced times t_min * 10^{k / ppd}, ending exactly at t_max when the
/// span is a whole number of steps (otherwise the last point below t_max).
struct TimeGrid {
  double t_min = 1e-2;
  double t_max = 1.0;
  int points_per_decade = 10;

  void validate() const;
  std::vector<double> values() const;
  /// The same density with both ends moved out by `decades`.
  TimeGrid extended(double decades) const;
};

double heat_kernel(const Point& x, const Point& y, double t, int dim);
/// K_s(y, z) = W_s(y, z) [-n/2 + |y - z|^2 / (4s)] = s d/ds W_s(y, z).
double time_derivative_kernel(const Point& y, const Point& z, double s, int dim);

/// W_t f(x) by panelled Gauss quadrature with adaptive refinement at the
/// singular set and at indicator edges.
double apply_heat(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p = {});
/// s d/ds W_s f(x) with the same quadrature.
double apply_tdt_heat(const AnalyticFunction& f, const Point& x, double s, int dim, const HeatParams& p = {});

/// Separable convolution with the sampled, normalised Gaussian. Cells within
/// the tap reach of the boundary are marked invalid via invalid_margin.
GridFunction apply_heat_grid(const GridFunction& g, double t, const HeatParams& p = {});

/// Closed forms for W_t of GaussianBump(a) and s d/ds W_s of it.
double gaussian_bump_heat(double a, const Point& x, double t, int dim);
double gaussian_bump_tdt_heat(double a, const Point& x, double s, int dim);

}  // namespace blo
