#pragma once

// Uncentred Hardy-Littlewood and Bennett maximal operators over a finite ball
// family, A1 constants in maximal and heat form, the exp(eps f) A1 probe, and
// the N(f) functional.

#include <optional>
#include <string>
#include <vector>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"
#include "blo/heat.hpp"

namespace blo {

/// w = exp(eps * f).
struct WeightFunction {
  AnalyticFunction base;
  double epsilon = 1.0;

  /// The weight as an analytic function, in closed form where possible.
  AnalyticFunction weight() const;
  /// Rejects eps <= 0, non-integrable weights, and eps * max|f| > 700 over
  /// the given points (the double-precision exp bound).
  void validate(int dim, const std::vector<Point>& points) const;
};

struct A1Estimate {
  double constant = 1.0;
  Point witness_point{};
  Ball witness_ball{};    // maximal form
  double witness_time = 0.0;  // heat form
};

/// max of the mean of |w| (or of w when signed) over the listed balls that
/// contain x. Throws DomainError when none does.
double hl_maximal(const GridFunction& w, const Point& x, const std::vector<Ball>& balls, Mode mode = Mode::grid);
double bennett_maximal(const GridFunction& f, const Point& x, const std::vector<Ball>& balls,
                       Mode mode = Mode::grid);

struct MaximalField {
  GridFunction values;               // -inf where no admissible ball contains the cell
  std::vector<double> best_radius;  // maximising radius per cell
};

/// Maximal function at every cell over balls enumerate_balls(d, radii, margin),
/// computed radius by radius as a range maximum of ball means.
MaximalField maximal_function(const GridFunction& g, const std::vector<double>& radii, Mode mode,
                              double margin = 0.0, bool signed_means = false);

/// sup over cells of M w / w.
A1Estimate a1_constant_maximal(const WeightFunction& w, const Domain& d, const std::vector<double>& radii,
                               Mode mode = Mode::exact);
/// sup over (t, x) of W_t w(x) / w(x).
A1Estimate a1_constant_heat(const WeightFunction& w, const TimeGrid& tg, const std::vector<Point>& points, int dim,
                            const HeatParams& p = {});

/// All cell centres of d in flat order.
std::vector<Point> grid_points(const Domain& d);

struct ProbeResult {
  std::optional<double> epsilon;  // smallest accepted eps, if any
  A1Estimate estimate;            // at the accepted eps, or the last tried
  bool diverging = false;         // every eps showed refinement growth
  std::vector<std::vector<double>> refinement;  // per eps, constants on N, 2N, 4N, ...
  std::string note;
};

/// For eps ascending: maximal A1 constants of exp(eps f) on the refinement
/// sequence N 2^k (k < levels). An eps is accepted when the sequence does not
/// diverge and its last value is <= threshold.
ProbeResult exp_a1_probe(const AnalyticFunction& f, const std::vector<double>& epsilon_grid, double threshold,
                         const Domain& d, int levels = 4);

/// True when the increments of a refinement sequence are positive, shrink no
/// faster than a factor 0.75, and add up to more than 5% of the first value.
bool refinement_diverges(const std::vector<double>& constants);

struct NFunctionalResult {
  double value = 0.0;
  double best_epsilon = 0.0;
  double best_C0 = 1.0;
  std::vector<double> epsilon_grid;  // admissible eps actually used
  std::vector<double> C0;            // per admissible eps
  A1Estimate witness;                // heat-form witness at best_epsilon
};

/// min over eps of log C0(eps) / eps, C0(eps) = a1_constant_heat(exp(eps f))
/// clamped below at 1 + 1e-12.
NFunctionalResult n_functional(const AnalyticFunction& f, const std::vector<double>& epsilon_grid,
                               const TimeGrid& tg, const std::vector<Point>& points, int dim,
                               const HeatParams& p = {});

/// Log-spaced eps grid, 16 per decade from eps_min, up to eps_max.
std::vector<double> epsilon_grid(double eps_min, double eps_max, int per_decade = 16);

}  // namespace blo
