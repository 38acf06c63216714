#pragma once

// Heat-equation slices u(., t) = W_t f and the regularity / oscillation
// defects over sqrt(t)-balls.

#include <cstdint>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"
#include "blo/heat.hpp"

namespace blo {

struct HeatSolutionSlice {
  AnalyticFunction initial;
  double time = 0.0;
  GridFunction values;  // u(x_k, t) at every cell centre
};

HeatSolutionSlice solve_heat(const AnalyticFunction& f, double t, const Domain& d, const HeatParams& p = {});

/// u(x, t) - min of u(., t) over the sqrt(t)-ball sample set (which contains
/// x, so the result is >= 0).
double regularity_defect(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p = {});
/// max - min of u(., t) over the sample set of B(x0, sqrt t).
double oscillation(const AnalyticFunction& f, const Point& x0, double t, int dim, const HeatParams& p = {});

struct BallDefects {
  double defect = 0.0;       // regularity defect at the centre
  double oscillation = 0.0;  // over the sample set
  double max_defect = 0.0;   // largest regularity defect over the sample points
};

/// Defect, oscillation, and the largest defect of any sample point.
BallDefects ball_defects(const AnalyticFunction& f, const Point& x0, double t, int dim, const HeatParams& p = {});

struct ChainReport {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  double worst_excess = 0.0;  // largest violation before the tolerance
  double tolerance = 0.0;
};

/// For random pairs x, y in B(x0, sqrt t) with midpoint z, checks
/// |u(x) - u(z)| <= max(D(x), D(z)) + eta and the same for y, where D is the
/// sampled regularity defect and eta a Lipschitz allowance for the sample
/// spacing.
ChainReport comparison_chain(const AnalyticFunction& f, const Point& x0, double t, int dim, std::uint64_t seed,
                             std::size_t pairs = 1000, const HeatParams& p = {});

/// Largest amount by which the slice leaves [lo, hi] (0 if it stays inside).
double maximum_principle_excess(const HeatSolutionSlice& s, double lo, double hi);

}  // namespace blo
