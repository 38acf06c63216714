#include "blo/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "blo/norms.hpp"
#include "blo/reduce.hpp"

namespace blo {

HeatSolutionSlice solve_heat(const AnalyticFunction& f, double t, const Domain& d, const HeatParams& p) {
  d.validate();
  f.validate(d.dimension);
  GridFunction u{d, std::vector<double>(d.cell_count()), "heat_slice:" + f.describe(), std::nullopt, std::nullopt,
                 0};
  parallel_for(u.values.size(),
               [&](std::size_t k) { u.values[k] = apply_heat(f, d.cell_center(k), t, d.dimension, p); });
  return HeatSolutionSlice{f, t, std::move(u)};
}

double regularity_defect(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p) {
  return heat_defect(f, x, t, dim, p);
}

namespace {

std::vector<double> ball_values(const AnalyticFunction& f, const std::vector<Point>& pts, double t, int dim,
                                const HeatParams& p) {
  std::vector<double> u(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) u[i] = apply_heat(f, pts[i], t, dim, p);
  return u;
}

}  // namespace

double oscillation(const AnalyticFunction& f, const Point& x0, double t, int dim, const HeatParams& p) {
  const auto u = ball_values(f, sqrt_t_ball_samples(x0, t, dim), t, dim, p);
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  return *hi - *lo;
}

BallDefects ball_defects(const AnalyticFunction& f, const Point& x0, double t, int dim, const HeatParams& p) {
  const auto pts = sqrt_t_ball_samples(x0, t, dim);
  const auto u = ball_values(f, pts, t, dim, p);
  BallDefects out;
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  out.oscillation = *hi - *lo;
  out.defect = u[0] - *lo;
  std::vector<double> d(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { d[i] = heat_defect(f, pts[i], t, dim, p); });
  for (double v : d) out.max_defect = std::max(out.max_defect, v);
  return out;
}

ChainReport comparison_chain(const AnalyticFunction& f, const Point& x0, double t, int dim, std::uint64_t seed,
                             std::size_t pairs, const HeatParams& p) {
  check_dimension(dim);
  const double rt = std::sqrt(t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&] {
    for (;;) {
      Point q{unit(rng), dim == 2 ? unit(rng) : 0.0};
      if (norm2(q, dim) <= 1.0) return Point{x0[0] + rt * q[0], x0[1] + rt * q[1]};
    }
  };
  std::vector<Point> xs(pairs), ys(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    xs[i] = draw();
    ys[i] = draw();
  }

  // Lipschitz allowance: the true infimum over B(z, sqrt t) may sit between
  // lattice samples, at most half a diagonal step away.
  const auto base = sqrt_t_ball_samples(x0, t, dim);
  const auto ub = ball_values(f, base, t, dim, p);
  const double step = rt / 8.0;
  double lip = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      const double dd = std::sqrt(dist2(base[i], base[j], dim));
      if (dd > 0.0 && dd <= 1.5 * step) lip = std::max(lip, std::abs(ub[i] - ub[j]) / dd);
    }
  ChainReport r;
  r.pairs = pairs;
  r.tolerance = 2.0 * lip * step * std::sqrt(static_cast<double>(dim)) + 1e-12;

  std::vector<double> excess(pairs, 0.0);
  parallel_for(pairs, [&](std::size_t i) {
    const Point z{0.5 * (xs[i][0] + ys[i][0]), 0.5 * (xs[i][1] + ys[i][1])};
    const double uz = apply_heat(f, z, t, dim, p);
    const double dz = heat_defect(f, z, t, dim, p);
    double worst = -std::numeric_limits<double>::infinity();
    for (const Point& e : {xs[i], ys[i]}) {
      const double ue = apply_heat(f, e, t, dim, p);
      const double de = heat_defect(f, e, t, dim, p);
      worst = std::max(worst, (uz - ue) - dz);
      worst = std::max(worst, (ue - uz) - de);
    }
    excess[i] = worst;
  });
  r.worst_excess = -std::numeric_limits<double>::infinity();
  for (double e : excess) {
    r.worst_excess = std::max(r.worst_excess, e);
    if (e > r.tolerance) ++r.failures;
  }
  return r;
}

double maximum_principle_excess(const HeatSolutionSlice& s, double lo, double hi) {
  double e = 0.0;
  for (std::size_t k = 0; k < s.values.values.size(); ++k) {
    const double v = s.values.values[k];
    e = std::max({e, v - hi, lo - v});
  }
  return e;
}

}  // namespace blo
