#include <doctest.h>

#include <cmath>

#include "blo/analytic.hpp"
#include "blo/pde.hpp"

using namespace blo;

TEST_CASE("heat slices") {
  const Domain d{1, 1.0, 64};
  const HeatParams p;
  for (double v : solve_heat(AnalyticFunction::constant(2.5), 0.05, d, p).values.values)
    CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
  const auto s = solve_heat(AnalyticFunction::gaussian_bump(0.1), 0.05, d, p);
  for (std::size_t k = 0; k < s.values.values.size(); ++k)
    CHECK(std::abs(s.values.values[k] - gaussian_bump_heat(0.1, d.cell_center(k), 0.05, 1)) <= 1e-8);
}

TEST_CASE("finite-difference PDE residual") {
  // (u(t + dt) - u(t - dt)) / (2 dt) against the discrete Laplacian of u(t).
  const Domain d{1, 1.0, 128};
  const double h = d.spacing(), t = 0.05, dt = 1e-4;
  const auto f = AnalyticFunction::gaussian_bump(0.1);
  const auto plus = solve_heat(f, t + dt, d), minus = solve_heat(f, t - dt, d), now = solve_heat(f, t, d);
  double worst = 0.0, scale = 0.0;
  for (int k = 1; k + 1 < d.cells_per_axis; ++k) {
    const double ut = (plus.values.values[k] - minus.values.values[k]) / (2.0 * dt);
    const double lap = (now.values.values[k + 1] - 2.0 * now.values.values[k] + now.values.values[k - 1]) / (h * h);
    worst = std::max(worst, std::abs(ut - lap));
    scale = std::max(scale, std::abs(ut));
  }
  CHECK(worst <= 1e-3 * scale);
}

TEST_CASE("regularity defect and oscillation") {
  const HeatParams p;
  const auto neglog = AnalyticFunction::neg_log_abs();
  CHECK(regularity_defect(AnalyticFunction::constant(1.0), Point{0.3, 0.0}, 0.1, 1, p) == 0.0);
  CHECK(oscillation(AnalyticFunction::constant(1.0), Point{0.3, 0.0}, 0.1, 1, p) <= 1e-12);
  for (const auto& f : {neglog, AnalyticFunction::indicator(Ball{Point{}, 0.5}),
                        AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0))})
    for (double x : {0.0, 0.1, 0.45, 0.9})
      for (double t : {1e-3, 1e-2, 1e-1}) {
        CAPTURE(f.describe());
        CAPTURE(x);
        CAPTURE(t);
        const BallDefects b = ball_defects(f, Point{x, 0.0}, t, 1, p);
        CHECK(b.defect >= 0.0);
        CHECK(b.oscillation >= b.defect);
        CHECK(b.oscillation <= 2.0 * b.max_defect + 1e-9);
        CHECK(b.defect == regularity_defect(f, Point{x, 0.0}, t, 1, p));
      }
}

TEST_CASE("maximum principle") {
  const Domain d{2, 1.0, 16};
  const auto s = solve_heat(AnalyticFunction::indicator(Ball{Point{0.1, 0.0}, 0.4}), 0.02, d);
  CHECK(maximum_principle_excess(s, 0.0, 1.0) <= 1e-10);
  CHECK(maximum_principle_excess(s, 0.0, 0.5) > 0.0);
}

TEST_CASE("comparison chain") {
  const HeatParams p;
  const auto f = AnalyticFunction::neg_log_abs();
  const ChainReport a = comparison_chain(f, Point{0.1, 0.0}, 0.01, 1, 0, 200, p);
  CHECK(a.pairs == 200);
  CHECK(a.failures == 0);
  const ChainReport b = comparison_chain(f, Point{0.1, 0.0}, 0.01, 1, 0, 200, p);
  CHECK(a.worst_excess == b.worst_excess);
  CHECK(comparison_chain(f, Point{0.05, 0.05}, 0.01, 2, 3, 8, p).failures == 0);
}
