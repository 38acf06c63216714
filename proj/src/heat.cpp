#include "blo/heat.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace blo {

void HeatParams::validate() const {
  if (!(truncation_multiple >= 8.0))
    throw DomainError("truncation_multiple must be at least 8, got " + std::to_string(truncation_multiple));
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) throw DomainError("tail_tolerance must lie in (0, 1)");
  if (!(max_extent > 0.0)) throw DomainError("max_extent must be positive");
}

double HeatParams::tail_mass(int dim) const { return dim * std::erfc(0.5 * truncation_multiple); }

void TimeGrid::validate() const {
  if (!(t_min > 0.0) || !(t_min < t_max) || !std::isfinite(t_max))
    throw DomainError("time grid needs 0 < t_min < t_max");
  if (points_per_decade < 4) throw DomainError("points_per_decade must be at least 4");
}

std::vector<double> TimeGrid::values() const {
  validate();
  const double steps = points_per_decade * std::log10(t_max / t_min);
  const int last = static_cast<int>(std::floor(steps + 1e-9));
  std::vector<double> out;
  out.reserve(last + 1);
  for (int k = 0; k <= last; ++k) out.push_back(t_min * std::pow(10.0, static_cast<double>(k) / points_per_decade));
  if (std::abs(steps - last) < 1e-9) out.back() = t_max;
  return out;
}

TimeGrid TimeGrid::extended(double decades) const {
  const double f = std::pow(10.0, decades);
  return TimeGrid{t_min / f, t_max * f, points_per_decade};
}

double heat_kernel(const Point& x, const Point& y, double t, int dim) {
  if (!(t > 0.0)) throw DomainError("heat_kernel: t must be positive");
  check_dimension(dim);
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * dim) * std::exp(-dist2(x, y, dim) / (4.0 * t));
}

double time_derivative_kernel(const Point& y, const Point& z, double s, int dim) {
  if (!(s > 0.0)) throw DomainError("time_derivative_kernel: s must be positive");
  check_dimension(dim);
  const double r2 = dist2(y, z, dim);
  return std::pow(4.0 * std::numbers::pi * s, -0.5 * dim) * std::exp(-r2 / (4.0 * s)) *
         (-0.5 * dim + r2 / (4.0 * s));
}

namespace {

template <class Kernel>
double heat_quadrature(const char* op, const AnalyticFunction& f, const Point& x, double t, int dim,
                       const HeatParams& p, Kernel&& kernel) {
  if (!(t > 0.0)) throw DomainError(std::string(op) + ": t must be positive");
  check_dimension(dim);
  p.validate();
  const double rt = std::sqrt(t);
  const double reach = p.truncation_multiple * rt;
  double xmax = 0.0;
  for (int a = 0; a < dim; ++a) xmax = std::max(xmax, std::abs(x[a]));
  if (xmax + reach > p.max_extent) throw NumericError(op, "truncation radius exceeds analytic support policy");

  const double panel = std::min(dim == 1 ? rt : 2.0 * rt, 2.0 * f.length_scale());
  const int m = std::max(1, static_cast<int>(std::ceil(2.0 * reach / panel)));
  const double w = 2.0 * reach / m;
  const AdaptiveRule rule{dim == 1 ? 12 : 10, 1e-7 * rt, 60, dim == 1 ? 40 : 8};
  const bool exact = p.quadrature == HeatQuadrature::exact_cell_integrals;

  auto value = [&](const Point& y) { return kernel(y) * f.evaluate(y, dim); };
  auto rough = [&](const Box& b) { return f.roughness(b, dim); };
  auto leaf = [&](const Box& b, Roughness) {
    const Point c = b.center();
    double integral;
    if (exact) {
      integral = f.cell_integral(b, dim);
    } else {
      try {
        integral = f.evaluate(c, dim) * b.volume(dim);
      } catch (const DomainError&) {
        integral = f.cell_integral(b, dim);
      }
    }
    return kernel(c) * integral;
  };

  double sum = 0.0;
  const int rows = dim == 2 ? m : 1;
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < m; ++i) {
      Box b;
      b.lo[0] = x[0] - reach + i * w;
      b.hi[0] = b.lo[0] + w;
      if (dim == 2) {
        b.lo[1] = x[1] - reach + j * w;
        b.hi[1] = b.lo[1] + w;
      }
      sum += integrate_adaptive(b, dim, rule, value, rough, leaf);
    }
  }
  if (!std::isfinite(sum)) throw NumericError(op, "non-finite quadrature result for " + f.describe());
  return sum;
}

}  // namespace

double apply_heat(const AnalyticFunction& f, const Point& x, double t, int dim, const HeatParams& p) {
  if (!(t > 0.0)) throw DomainError("apply_heat: t must be positive");
  const double norm = std::pow(4.0 * std::numbers::pi * t, -0.5 * dim);
  return heat_quadrature("apply_heat", f, x, t, dim, p,
                         [&](const Point& y) { return norm * std::exp(-dist2(x, y, dim) / (4.0 * t)); });
}

double apply_tdt_heat(const AnalyticFunction& f, const Point& x, double s, int dim, const HeatParams& p) {
  if (!(s > 0.0)) throw DomainError("apply_tdt_heat: s must be positive");
  const double norm = std::pow(4.0 * std::numbers::pi * s, -0.5 * dim);
  return heat_quadrature("apply_tdt_heat", f, x, s, dim, p, [&](const Point& y) {
    const double q = dist2(x, y, dim) / (4.0 * s);
    return norm * std::exp(-q) * (q - 0.5 * dim);
  });
}

GridFunction apply_heat_grid(const GridFunction& g, double t, const HeatParams& p) {
  if (!(t > 0.0)) throw DomainError("apply_heat_grid: t must be positive");
  p.validate();
  const Domain& d = g.domain;
  const double h = d.spacing();
  if (t < 0.0625 * h * h) throw NumericError("apply_heat_grid", "grid too coarse for t");
  const int n = d.cells_per_axis;

  int reach = static_cast<int>(std::ceil(p.truncation_multiple * std::sqrt(t) / h));
  std::vector<double> taps{1.0};
  for (int j = 1; j <= reach; ++j) {
    const double v = std::exp(-(j * h) * (j * h) / (4.0 * t));
    if (v < p.tail_tolerance) break;
    taps.push_back(v);
  }
  reach = static_cast<int>(taps.size()) - 1;
  double total = taps[0];
  for (int j = 1; j <= reach; ++j) total += 2.0 * taps[j];
  for (double& v : taps) v /= total;

  const int margin = g.invalid_margin + reach;
  if (2 * margin >= n) throw NumericError("apply_heat_grid", "kernel reach leaves no valid cells; enlarge domain");

  GridFunction out{d, g.values, "heat(t=" + std::to_string(t) + "):" + g.provenance, std::nullopt, std::nullopt,
                   margin};
  std::vector<double> buffer(g.values.size());
  const int rows = d.dimension == 2 ? n : 1;

  // Pass along x_1 (contiguous rows).
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const double* in = out.values.data() + static_cast<std::size_t>(r) * n;
    double* res = buffer.data() + static_cast<std::size_t>(r) * n;
    for (int i = 0; i < n; ++i) {
      double s = taps[0] * in[i];
      for (int j = 1; j <= reach; ++j) {
        if (i - j >= 0) s += taps[j] * in[i - j];
        if (i + j < n) s += taps[j] * in[i + j];
      }
      res[i] = s;
    }
  }
  out.values.swap(buffer);
  if (d.dimension == 1) return out;

  // Pass along x_2.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      auto at = [&](int row) { return out.values[static_cast<std::size_t>(row) * n + i]; };
      double s = taps[0] * at(r);
      for (int j = 1; j <= reach; ++j) {
        if (r - j >= 0) s += taps[j] * at(r - j);
        if (r + j < n) s += taps[j] * at(r + j);
      }
      buffer[static_cast<std::size_t>(r) * n + i] = s;
    }
  }
  out.values.swap(buffer);
  return out;
}

double gaussian_bump_heat(double a, const Point& x, double t, int dim) {
  return std::pow(a / (a + t), 0.5 * dim) * std::exp(-norm2(x, dim) / (4.0 * (a + t)));
}

double gaussian_bump_tdt_heat(double a, const Point& x, double s, int dim) {
  const double u = gaussian_bump_heat(a, x, s, dim);
  return s * u * (-0.5 * dim / (a + s) + norm2(x, dim) / (4.0 * (a + s) * (a + s)));
}

}  // namespace blo
