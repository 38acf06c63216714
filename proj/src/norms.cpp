#include "blo/norms.hpp"

#include <cmath>
#include <numbers>

#include "blo/reduce.hpp"

namespace blo {

NormEstimate blo_norm(const GridFunction& g, const std::vector<Ball>& balls, Mode mode) {
  if (balls.empty()) throw DomainError("blo_norm: empty ball list");
  const BallIndex index(g, mode);
  const ArgMax best = parallel_argmax(balls.size(), "blo_norm", [&](std::size_t i) {
    return index.mean(balls[i]) - index.minimum(balls[i]);
  });
  NormEstimate e;
  e.value = best.value;
  e.witness_ball = balls[best.index];
  e.witness_point = e.witness_ball.center;
  e.ball_count = balls.size();
  e.mode = mode;
  return e;
}

NormEstimate blo_norm(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls, Mode mode) {
  const bool exact = mode == Mode::exact;
  return blo_norm(sample(f, d, {exact, exact}), balls, mode);
}

NormEstimate bmo_norm(const GridFunction& g, const std::vector<Ball>& balls) {
  if (balls.empty()) throw DomainError("bmo_norm: empty ball list");
  const BallIndex index(g, Mode::grid);
  const ArgMax best = parallel_argmax(balls.size(), "bmo_norm", [&](std::size_t i) {
    const double m = index.mean(balls[i]);
    double s = 0.0;
    std::size_t cnt = 0;
    index.for_each_cell(balls[i], [&](std::size_t k) {
      s += std::abs(g.values[k] - m);
      ++cnt;
    });
    return s / static_cast<double>(cnt);
  });
  NormEstimate e;
  e.value = best.value;
  e.witness_ball = balls[best.index];
  e.witness_point = e.witness_ball.center;
  e.ball_count = balls.size();
  return e;
}

NormEstimate bmo_norm(const AnalyticFunction& f, const Domain& d, const std::vector<Ball>& balls) {
  return bmo_norm(sample(f, d), balls);
}

std::vector<Point> sqrt_t_ball_samples(const Point& x, double t, int dim) {
  check_dimension(dim);
  const double step = std::sqrt(t) / 8.0;
  std::vector<Point> pts{x};
  if (dim == 1) {
    for (int k = -8; k <= 8; ++k)
      if (k != 0) pts.push_back(Point{x[0] + k * step, 0.0});
    return pts;
  }
  for (int j = -8; j <= 8; ++j)
    for (int i = -8; i <= 8; ++i)
      if ((i != 0 || j != 0) && i * i + j * j <= 64) pts.push_back(Point{x[0] + i * step, x[1] + j * step});
  const double r = std::sqrt(t);
  for (int k = 0; k < 32; ++k) {
    const double a = 2.0 * std::numbers::pi * (k + 0.5) / 32.0;
    pts.push_back(Point{x[0] + r * std::cos(a), x[1] + r * std::sin(a)});
  }
  return pts;
}

double heat_defect(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p) {
  // W_t c = c everywhere, so the defect vanishes; skip the quadrature noise.
  if (f.kind() == Kind::Constant) return 0.0;
  const auto pts = sqrt_t_ball_samples(x, t, dim);
  const double centre = apply_heat(f, x, t, dim, p);
  double low = centre;
  for (std::size_t i = 1; i < pts.size(); ++i) low = std::min(low, apply_heat(f, pts[i], t, dim, p));
  return centre - low;
}

namespace {

void collect_features(const AnalyticFunction& f, const Point& shift, std::vector<Point>& out) {
  switch (f.kind()) {
    case Kind::Indicator: {
      const Ball& b = f.support();
      out.push_back(b.center + shift);
      out.push_back(b.center + shift + Point{b.radius, 0.0});
      out.push_back(b.center + shift - Point{b.radius, 0.0});
      return;
    }
    case Kind::Shifted: collect_features(f.child(0), shift + f.offset(), out); return;
    case Kind::Scaled:
    case Kind::Exponential: collect_features(f.child(0), shift, out); return;
    case Kind::Sum:
      collect_features(f.child(0), shift, out);
      collect_features(f.child(1), shift, out);
      return;
    default: out.push_back(shift); return;
  }
}

}  // namespace

std::vector<Point> feature_centers(const AnalyticFunction& f, int dim) {
  check_dimension(dim);
  std::vector<Point> features;
  collect_features(f, Point{}, features);
  std::vector<Point> out;
  for (const Point& c : features) {
    bool seen = false;
    for (const Point& q : out) seen = seen || dist2(q, c, kMaxDim) == 0.0;
    if (seen) continue;
    out.push_back(c);
    for (int k = -16; k <= 4; ++k) {
      const double o = std::pow(10.0, k / 4.0);
      if (dim == 1) {
        out.push_back(c + Point{o, 0.0});
        out.push_back(c - Point{o, 0.0});
      } else {
        out.push_back(c + Point{o, 0.0});
        out.push_back(c + Point{o / std::numbers::sqrt2, o / std::numbers::sqrt2});
      }
    }
  }
  return out;
}

NormEstimate heat_blo_functional(const AnalyticFunction& f, const TimeGrid& tg, const std::vector<Point>& centers,
                                 int dim, const HeatParams& p) {
  const auto times = tg.values();
  if (centers.empty()) throw DomainError("heat_blo_functional: no centres");
  f.validate(dim);
  const std::size_t nc = centers.size();
  const ArgMax best = parallel_argmax(times.size() * nc, "heat_blo_functional", [&](std::size_t i) {
    return heat_defect(f, centers[i % nc], times[i / nc], dim, p);
  });
  NormEstimate e;
  e.value = best.value;
  e.witness_point = centers[best.index % nc];
  e.witness_time = times[best.index / nc];
  e.ball_count = nc;
  e.time_count = times.size();
  return e;
}

NormEstimate heat_blo_functional(const GridFunction& g, const TimeGrid& tg, const HeatParams& p) {
  const auto times = tg.values();
  const Domain& d = g.domain;
  const int n = d.cells_per_axis;
  const double h = d.spacing();
  NormEstimate e;
  e.value = -1.0;
  e.time_count = times.size();
  for (double t : times) {
    const GridFunction u = apply_heat_grid(g, t, p);
    const BallIndex index(u, Mode::grid);
    const int reach = static_cast<int>(std::ceil(std::sqrt(t) / h)) + u.invalid_margin;
    std::vector<std::size_t> cells;
    auto inside = [&](int i) { return i >= reach && i <= n - 1 - reach; };
    for (std::size_t k = 0; k < d.cell_count(); ++k)
      if (inside(static_cast<int>(k % n)) && (d.dimension == 1 || inside(static_cast<int>(k / n))))
        cells.push_back(k);
    if (cells.empty()) continue;
    const double rt = std::sqrt(t);
    const ArgMax best = parallel_argmax(cells.size(), "heat_blo_functional", [&](std::size_t i) {
      const std::size_t k = cells[i];
      return u.values[k] - index.minimum(Ball{d.cell_center(k), rt});
    });
    e.ball_count += cells.size();
    if (best.value > e.value) {
      e.value = best.value;
      e.witness_point = d.cell_center(cells[best.index]);
      e.witness_time = t;
    }
  }
  if (e.value < 0.0) throw DomainError("heat_blo_functional: no admissible (centre, time) pairs; enlarge domain");
  return e;
}

PerturbationReport perturbation_check(const AnalyticFunction& f, const AnalyticFunction& g, const Domain& d,
                                      const std::vector<Ball>& balls) {
  if (!f.classification().is_blo) throw DomainError("perturbation_check: " + f.describe() + " is not BLO");
  if (!g.classification().is_linfty) throw DomainError("perturbation_check: " + g.describe() + " is not bounded");
  const GridFunction fs = sample(f, d);
  const GridFunction gs = sample(g, d);
  PerturbationReport r;
  const NormEstimate diff = blo_norm(combine(fs, 1.0, gs, -1.0), balls);
  r.lhs = diff.value;
  r.witness = diff.witness_ball;
  r.f_norm = blo_norm(fs, balls).value;
  r.g_sup = gs.sup_abs();
  r.rhs = r.f_norm + 2.0 * r.g_sup;
  r.slack = r.rhs - r.lhs;
  r.pass = r.lhs <= r.rhs + 1e-12 * std::max(1.0, r.rhs);
  return r;
}

}  // namespace blo
