#include "blo/maximal.hpp"

#include <cmath>
#include <limits>

#include "blo/reduce.hpp"

namespace blo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool contains(const Ball& b, const Point& x, int dim) {
  return dist2(b.center, x, dim) <= b.radius * b.radius * (1.0 + 1e-12);
}

GridFunction magnitude(const GridFunction& g, Mode mode) {
  bool nonnegative = true;
  for (double v : g.values) nonnegative = nonnegative && v >= 0.0;
  if (nonnegative) return g;
  if (mode == Mode::exact) throw DomainError("exact-mode maximal function needs a nonnegative weight");
  GridFunction a = g;
  for (double& v : a.values) v = std::abs(v);
  a.cell_means.reset();
  a.cell_infima.reset();
  return a;
}

double maximal_at(const GridFunction& g, const Point& x, const std::vector<Ball>& balls, Mode mode) {
  const BallIndex index(g, mode);
  double best = kNegInf;
  bool any = false;
  for (const Ball& b : balls) {
    if (!contains(b, x, g.domain.dimension)) continue;
    best = std::max(best, index.mean(b));
    any = true;
  }
  if (!any) throw DomainError("no admissible ball contains the point");
  return best;
}

}  // namespace

AnalyticFunction WeightFunction::weight() const {
  if (auto closed = exponential_closed_form(base, epsilon)) return *closed;
  return AnalyticFunction::exponential(base, epsilon);
}

void WeightFunction::validate(int dim, const std::vector<Point>& points) const {
  if (!(epsilon > 0.0)) throw DomainError("weight exponent must be positive");
  weight().validate(dim);
  double top = 0.0;
  for (const Point& x : points) {
    try {
      top = std::max(top, std::abs(base.evaluate(x, dim)));
    } catch (const DomainError&) {
    }
  }
  if (epsilon * top > 700.0)
    throw DomainError("overflow guard: eps * max|f| = " + std::to_string(epsilon * top) + " exceeds 700");
}

double hl_maximal(const GridFunction& w, const Point& x, const std::vector<Ball>& balls, Mode mode) {
  return maximal_at(magnitude(w, mode), x, balls, mode);
}

double bennett_maximal(const GridFunction& f, const Point& x, const std::vector<Ball>& balls, Mode mode) {
  return maximal_at(f, x, balls, mode);
}

MaximalField maximal_function(const GridFunction& g, const std::vector<double>& radii, Mode mode, double margin,
                              bool signed_means) {
  const GridFunction src = signed_means ? g : magnitude(g, mode);
  const Domain& d = g.domain;
  const BallIndex index(src, mode);
  const std::size_t cells = d.cell_count();
  MaximalField out{GridFunction{d, std::vector<double>(cells, kNegInf), "maximal:" + g.provenance, std::nullopt,
                                std::nullopt, 0},
                   std::vector<double>(cells, 0.0)};
  bool any = false;
  for (double r : radii) {
    std::vector<Ball> balls;
    try {
      balls = enumerate_balls(d, {r}, margin);
    } catch (const DomainError&) {
      continue;
    }
    any = true;
    GridFunction means{d, std::vector<double>(cells, kNegInf), "ball means", std::nullopt, std::nullopt, 0};
    const double h = d.spacing();
    parallel_for(balls.size(), [&](std::size_t i) {
      const Point& c = balls[i].center;
      const int ix = static_cast<int>(std::lround((c[0] + d.half_width) / h - 0.5));
      const int iy = d.dimension == 2 ? static_cast<int>(std::lround((c[1] + d.half_width) / h - 0.5)) : 0;
      means.values[d.flat_index(ix, iy)] = index.mean(balls[i]);
    });
    const BallIndex reach(means, Mode::grid);
    for (std::size_t k = 0; k < cells; ++k) {
      const double v = reach.maximum(Ball{d.cell_center(k), r});
      if (v > out.values.values[k]) {
        out.values.values[k] = v;
        out.best_radius[k] = r;
      }
    }
  }
  if (!any) throw DomainError("no admissible balls; enlarge domain");
  return out;
}

std::vector<Point> grid_points(const Domain& d) {
  d.validate();
  std::vector<Point> pts(d.cell_count());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = d.cell_center(k);
  return pts;
}

A1Estimate a1_constant_maximal(const WeightFunction& w, const Domain& d, const std::vector<double>& radii,
                               Mode mode) {
  d.validate();
  w.validate(d.dimension, grid_points(d));
  const AnalyticFunction weight = w.weight();
  const GridFunction gw = sample(weight, d, {mode == Mode::exact, false});
  const MaximalField field = maximal_function(gw, radii, mode);
  A1Estimate e;
  e.constant = kNegInf;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < gw.values.size(); ++k) {
    const double m = field.values.values[k];
    if (m == kNegInf) continue;
    const double ratio = m / gw.values[k];
    if (std::isnan(ratio)) throw NumericError("a1_constant_maximal", "NaN ratio at cell " + std::to_string(k));
    if (ratio > e.constant) {
      e.constant = ratio;
      arg = k;
    }
  }
  if (e.constant == kNegInf) throw DomainError("no admissible ball contains any cell");
  e.witness_point = d.cell_center(arg);
  // Recover the maximising ball at the witness radius.
  const BallIndex index(gw, mode);
  const double r = field.best_radius[arg];
  double best = kNegInf;
  for (const Ball& b : enumerate_balls(d, {r})) {
    if (!contains(b, e.witness_point, d.dimension)) continue;
    const double m = index.mean(b);
    if (m > best) {
      best = m;
      e.witness_ball = b;
    }
  }
  return e;
}

A1Estimate a1_constant_heat(const WeightFunction& w, const TimeGrid& tg, const std::vector<Point>& points, int dim,
                            const HeatParams& p) {
  if (points.empty()) throw DomainError("a1_constant_heat: no points");
  w.validate(dim, points);
  const AnalyticFunction weight = w.weight();
  const auto times = tg.values();
  const std::size_t np = points.size();
  std::vector<double> denom(np);
  for (std::size_t i = 0; i < np; ++i) denom[i] = weight.evaluate(points[i], dim);
  const ArgMax best = parallel_argmax(times.size() * np, "a1_constant_heat", [&](std::size_t i) {
    return apply_heat(weight, points[i % np], times[i / np], dim, p) / denom[i % np];
  });
  A1Estimate e;
  e.constant = best.value;
  e.witness_point = points[best.index % np];
  e.witness_time = times[best.index / np];
  return e;
}

bool refinement_diverges(const std::vector<double>& c) {
  if (c.size() < 3) return false;
  for (std::size_t k = 1; k < c.size(); ++k)
    if (!(c[k] > c[k - 1])) return false;
  for (std::size_t k = 2; k < c.size(); ++k)
    if (c[k] - c[k - 1] < 0.75 * (c[k - 1] - c[k - 2])) return false;
  return c.back() - c.front() > 0.05 * c.front();
}

ProbeResult exp_a1_probe(const AnalyticFunction& f, const std::vector<double>& epsilon_grid, double threshold,
                         const Domain& d, int levels) {
  if (epsilon_grid.empty()) throw DomainError("exp_a1_probe: empty epsilon grid");
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i)
    if (!(epsilon_grid[i] > 0.0) || (i > 0 && !(epsilon_grid[i] > epsilon_grid[i - 1])))
      throw DomainError("exp_a1_probe: epsilon grid must be positive and ascending");
  ProbeResult out;
  bool tried = false;
  bool all_diverge = true;
  for (double eps : epsilon_grid) {
    const WeightFunction w{f, eps};
    std::vector<double> constants;
    A1Estimate last;
    try {
      for (int k = 0; k < levels; ++k) {
        Domain dk = d;
        dk.cells_per_axis = d.cells_per_axis << k;
        last = a1_constant_maximal(w, dk, dyadic_radii(dk), Mode::exact);
        constants.push_back(last.constant);
      }
    } catch (const DomainError& ex) {
      out.note += "eps=" + std::to_string(eps) + " rejected: " + ex.what() + "; ";
      continue;
    }
    tried = true;
    out.refinement.push_back(constants);
    out.estimate = last;
    const bool diverging = refinement_diverges(constants);
    all_diverge = all_diverge && diverging;
    if (!diverging && constants.back() <= threshold) {
      out.epsilon = eps;
      return out;
    }
  }
  if (!tried) throw DomainError("exp_a1_probe: every eps was rejected by the overflow guard");
  out.diverging = all_diverge;
  if (all_diverge) out.note += "A1 constants grow under refinement for every eps";
  return out;
}

NFunctionalResult n_functional(const AnalyticFunction& f, const std::vector<double>& epsilon_grid,
                               const TimeGrid& tg, const std::vector<Point>& points, int dim,
                               const HeatParams& p) {
  NFunctionalResult out;
  bool any = false;
  for (double eps : epsilon_grid) {
    const WeightFunction w{f, eps};
    try {
      w.validate(dim, points);
    } catch (const DomainError&) {
      continue;
    }
    const A1Estimate e = a1_constant_heat(w, tg, points, dim, p);
    const double c0 = std::max(e.constant, 1.0 + 1e-12);
    const double value = std::log(c0) / eps;
    out.epsilon_grid.push_back(eps);
    out.C0.push_back(c0);
    if (!any || value < out.value) {
      out.value = value;
      out.best_epsilon = eps;
      out.best_C0 = c0;
      out.witness = e;
    }
    any = true;
  }
  if (!any) throw DomainError("n_functional: no admissible eps");
  return out;
}

std::vector<double> epsilon_grid(double eps_min, double eps_max, int per_decade) {
  if (!(eps_min > 0.0) || !(eps_max >= eps_min) || per_decade < 1)
    throw DomainError("epsilon grid needs 0 < eps_min <= eps_max");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double e = eps_min * std::pow(10.0, static_cast<double>(k) / per_decade);
    if (e > eps_max * (1.0 + 1e-12)) break;
    out.push_back(e);
  }
  return out;
}

}  // namespace blo
