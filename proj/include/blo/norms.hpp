#pragma once

// BLO and BMO norm estimators over finite ball families, the heat defect
// functional, and the L^inf perturbation inequality.

#include <vector>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"
#include "blo/heat.hpp"

namespace blo {

struct NormEstimate {
  double value = 0.0;
  Ball witness_ball{};   // for ball-based estimates
  Point witness_point{};  // for (x, t) estimates
  double witness_time = 0.0;
  std::size_t ball_count = 0;
  std::size_t time_count = 0;
  Mode mode = Mode::grid;
};

/// max over balls of mean_B g - min_B g.
NormEstimate blo_norm(const GridFunction& g, const std::vector<Ball>& balls, Mode mode = Mode::grid);
/// Samples f on d (with exact cell means and infima in exact mode) first.
NormEstimate blo_norm(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls,
                      Mode mode = Mode::grid);

/// max over balls of the mean of |g - g_B| over member cells. Grid mode only.
NormEstimate bmo_norm(const GridFunction& g, const std::vector<Ball>& balls);
NormEstimate bmo_norm(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls);

/// Sample set for infima over B(x, sqrt t): 17 lattice points per axis at
/// spacing sqrt(t)/8, clipped to the ball, plus 32 boundary points in 2-D.
/// The first entry is x itself.
std::vector<Point> sqrt_t_ball_samples(const Point& x, double t, int dim);

/// W_t f(x) - min over the sample set of W_t f.
double heat_defect(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p = {});

/// Centres clustered around the features of f (singular points, indicator
/// edges) at log-spaced offsets from 1e-4 to 10.
std::vector<Point> feature_centers(const AnalyticFunction& f, int dim);

/// max of heat_defect over centers x times.
NormEstimate heat_blo_functional(const AnalyticFunction& f, const TimeGrid& tg, const std::vector<Point>& centers,
                                 int dim, const HeatParams& p = {});
/// Grid form: W_t by apply_heat_grid, infima over the cells in B(x_k, sqrt t),
/// restricted to cells whose whole ball lies in the valid region.
NormEstimate heat_blo_functional(const GridFunction& g, const TimeGrid& tg, const HeatParams& p = {});

struct PerturbationReport {
  double lhs = 0.0;       // ||f - g||_BLO estimate
  double f_norm = 0.0;    // ||f||_BLO estimate
  double g_sup = 0.0;     // max |g| over the grid
  double rhs = 0.0;       // f_norm + 2 g_sup
  double slack = 0.0;     // rhs - lhs
  bool pass = false;
  Ball witness{};
};

/// Both sides on the same grid and ball family (grid mode).
PerturbationReport perturbation_check(const AnalyticFunction& f, const AnalyticFunction& g, const Domain& d,
                                      const std::vector<Ball>& balls);

}  // namespace blo
