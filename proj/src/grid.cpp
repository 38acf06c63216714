#include "blo/grid.hpp"

#include <cmath>
#include <limits>

#include "blo/analytic.hpp"
#include "blo/reduce.hpp"

namespace blo {

void Domain::validate() const {
  check_dimension(dimension);
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("half_width must be positive and finite");
  if (cells_per_axis <= 0 || cells_per_axis % 2 != 0)
    throw DomainError("cells_per_axis must be even and positive, got " + std::to_string(cells_per_axis));
}

std::size_t Domain::cell_count() const {
  std::size_t c = 1;
  for (int a = 0; a < dimension; ++a) c *= static_cast<std::size_t>(cells_per_axis);
  return c;
}

Point Domain::cell_center(std::size_t k) const {
  Point p{};
  p[0] = coordinate(static_cast<int>(k % cells_per_axis));
  if (dimension == 2) p[1] = coordinate(static_cast<int>(k / cells_per_axis));
  return p;
}

Box Domain::cell_box(std::size_t k) const {
  const Point c = cell_center(k);
  const double h = spacing();
  Box b;
  for (int a = 0; a < dimension; ++a) {
    b.lo[a] = c[a] - 0.5 * h;
    b.hi[a] = c[a] + 0.5 * h;
  }
  return b;
}

bool GridFunction::is_valid_cell(std::size_t k) const {
  if (invalid_margin <= 0) return true;
  const int n = domain.cells_per_axis;
  auto ok = [&](int i) { return i >= invalid_margin && i <= n - 1 - invalid_margin; };
  if (!ok(static_cast<int>(k % n))) return false;
  return domain.dimension == 1 || ok(static_cast<int>(k / n));
}

double GridFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

GridFunction sample(const AnalyticFunction& f, const Domain& d, SampleOptions options) {
  d.validate();
  f.validate(d.dimension);
  const std::size_t cells = d.cell_count();
  GridFunction g{d, std::vector<double>(cells), "sample:" + f.describe(), std::nullopt, std::nullopt, 0};
  for (std::size_t k = 0; k < cells; ++k) {
    try {
      g.values[k] = f.evaluate(d.cell_center(k), d.dimension);
    } catch (const DomainError&) {
      throw DomainError("cell centre " + std::to_string(k) + " lies on the singular set of " + f.describe());
    }
  }
  if (options.exact_means) {
    std::vector<double> means(cells);
    const double vol = std::pow(d.spacing(), d.dimension);
    parallel_for(cells, [&](std::size_t k) { means[k] = f.cell_integral(d.cell_box(k), d.dimension) / vol; });
    g.cell_means = std::move(means);
  }
  if (options.exact_infima) {
    std::vector<double> inf(cells);
    for (std::size_t k = 0; k < cells; ++k) {
      double fallback = g.values[k];
      if (g.cell_means) fallback = std::min(fallback, (*g.cell_means)[k]);
      inf[k] = f.infimum_over_box(d.cell_box(k), d.dimension).value_or(fallback);
    }
    g.cell_infima = std::move(inf);
  }
  return g;
}

GridFunction constant_grid(const Domain& d, double c) {
  d.validate();
  GridFunction g{d, std::vector<double>(d.cell_count(), c), "constant", std::nullopt, std::nullopt, 0};
  g.cell_means = g.values;
  g.cell_infima = g.values;
  return g;
}

GridFunction combine(const GridFunction& f, double a, const GridFunction& g, double b) {
  const Domain& d = f.domain;
  if (d.dimension != g.domain.dimension || d.half_width != g.domain.half_width ||
      d.cells_per_axis != g.domain.cells_per_axis)
    throw DomainError("combine requires a shared domain");
  GridFunction out{d, std::vector<double>(f.values.size()), "combine(" + f.provenance + "," + g.provenance + ")",
                   std::nullopt, std::nullopt, std::max(f.invalid_margin, g.invalid_margin)};
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = a * f.values[k] + b * g.values[k];
  if (f.cell_means && g.cell_means) {
    std::vector<double> m(out.values.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = a * (*f.cell_means)[k] + b * (*g.cell_means)[k];
    out.cell_means = std::move(m);
  }
  return out;
}

// ---- BallIndex -------------------------------------------------------------------

void BallIndex::SparseTable::build(const double* data, int n, bool take_min) {
  levels.clear();
  levels.emplace_back(data, data + n);
  for (int w = 1; 2 * w <= n; w *= 2) {
    const auto& prev = levels.back();
    std::vector<double> next(n - 2 * w + 1);
    for (int i = 0; i + 2 * w <= n; ++i)
      next[i] = take_min ? std::min(prev[i], prev[i + w]) : std::max(prev[i], prev[i + w]);
    levels.push_back(std::move(next));
  }
}

double BallIndex::SparseTable::query(int i0, int i1, bool take_min) const {
  const int len = i1 - i0 + 1;
  int lv = 0;
  while ((2 << lv) <= len) ++lv;
  const auto& row = levels[lv];
  const double a = row[i0], b = row[i1 - (1 << lv) + 1];
  return take_min ? std::min(a, b) : std::max(a, b);
}

BallIndex::BallIndex(const GridFunction& g, Mode mode) : domain_(g.domain), mode_(mode) {
  const int n = domain_.cells_per_axis;
  rows_ = domain_.dimension == 2 ? n : 1;
  const std::vector<double>* mean_source = &g.values;
  const std::vector<double>* inf_source = &g.values;
  if (mode == Mode::exact) {
    if (!g.cell_means) throw DomainError("exact mode requires exact cell means (" + g.provenance + ")");
    mean_source = &*g.cell_means;
    if (g.cell_infima) inf_source = &*g.cell_infima;
  }
  prefix_.assign(static_cast<std::size_t>(rows_) * (n + 1), 0.0L);
  mins_.resize(rows_);
  maxs_.resize(rows_);
  for (int r = 0; r < rows_; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * n;
    long double* p = &prefix_[static_cast<std::size_t>(r) * (n + 1)];
    for (int i = 0; i < n; ++i) p[i + 1] = p[i] + (*mean_source)[base + i];
    mins_[r].build(inf_source->data() + base, n, true);
    maxs_[r].build(g.values.data() + base, n, false);
  }
}

double BallIndex::mean(const Ball& b) const {
  const int n = domain_.cells_per_axis;
  long double sum = 0.0L;
  std::size_t cnt = 0;
  for_each_row(b, [&](int row, int i0, int i1) {
    const long double* p = &prefix_[static_cast<std::size_t>(row) * (n + 1)];
    sum += p[i1 + 1] - p[i0];
    cnt += static_cast<std::size_t>(i1 - i0 + 1);
  });
  if (cnt == 0) throw DomainError("ball contains no samples");
  return static_cast<double>(sum / cnt);
}

double BallIndex::minimum(const Ball& b) const {
  double m = std::numeric_limits<double>::infinity();
  bool any = false;
  for_each_row(b, [&](int row, int i0, int i1) {
    m = std::min(m, mins_[row].query(i0, i1, true));
    any = true;
  });
  if (!any) throw DomainError("ball contains no samples");
  return m;
}

double BallIndex::maximum(const Ball& b) const {
  double m = -std::numeric_limits<double>::infinity();
  bool any = false;
  for_each_row(b, [&](int row, int i0, int i1) {
    m = std::max(m, maxs_[row].query(i0, i1, false));
    any = true;
  });
  if (!any) throw DomainError("ball contains no samples");
  return m;
}

std::size_t BallIndex::count(const Ball& b) const {
  std::size_t cnt = 0;
  for_each_row(b, [&](int, int i0, int i1) { cnt += static_cast<std::size_t>(i1 - i0 + 1); });
  return cnt;
}

double mean_over_ball(const GridFunction& g, const Ball& b, Mode mode) {
  return BallIndex(g, mode).mean(b);
}

double essinf_over_ball(const GridFunction& g, const Ball& b, Mode mode) {
  return BallIndex(g, mode).minimum(b);
}

std::vector<double> dyadic_radii(const Domain& d) {
  d.validate();
  std::vector<double> radii;
  const double h = d.spacing();
  for (double r = 2.0 * h; r <= 0.5 * d.half_width * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
  return radii;
}

std::vector<Ball> enumerate_balls(const Domain& d, const std::vector<double>& radii, double margin) {
  d.validate();
  if (radii.empty()) throw DomainError("radius set is empty");
  const int n = d.cells_per_axis;
  const double h = d.spacing();
  std::vector<Ball> out;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("radii must be positive");
    auto admissible = [&](int i) { return std::min(i, n - 1 - i) * h - (r + margin) > 1e-9 * h; };
    for (std::size_t k = 0; k < d.cell_count(); ++k) {
      const int i = static_cast<int>(k % n);
      if (!admissible(i)) continue;
      if (d.dimension == 2 && !admissible(static_cast<int>(k / n))) continue;
      out.push_back(Ball{d.cell_center(k), r});
    }
  }
  if (out.empty()) throw DomainError("no admissible balls; enlarge domain");
  return out;
}

}  // namespace blo
