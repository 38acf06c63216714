#pragma once

// Cell-centred sampling of functions on the box [-L, L]^n, ball enumeration,
// and the ball mean / essential-infimum primitives.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blo/types.hpp"

namespace blo {

class AnalyticFunction;

struct Domain {
  int dimension = 1;
  double half_width = 1.0;
  int cells_per_axis = 2;

  /// Throws DomainError unless n in {1,2}, L > 0 and N even and positive.
  void validate() const;

  double spacing() const { return 2.0 * half_width / cells_per_axis; }
  std::size_t cell_count() const;
  /// Coordinate of the i-th cell centre along any axis.
  double coordinate(int i) const { return -half_width + (i + 0.5) * spacing(); }
  Point cell_center(std::size_t k) const;
  Box cell_box(std::size_t k) const;
  /// Flat index of the cell with per-axis indices (i, j); j ignored in 1-D.
  std::size_t flat_index(int i, int j = 0) const {
    return static_cast<std::size_t>(j) * cells_per_axis + i;
  }
};

struct Ball {
  Point center{};
  double radius = 0.0;
};

/// Interval (a, b) as a 1-D ball.
inline Ball interval_ball(double a, double b) {
  return Ball{Point{0.5 * (a + b), 0.0}, 0.5 * (b - a)};
}

enum class Mode { grid, exact };

inline const char* to_string(Mode m) { return m == Mode::grid ? "grid" : "exact"; }

struct GridFunction {
  Domain domain;
  std::vector<double> values;  // one per cell, flat index order
  std::string provenance;
  /// Exact cell averages (integral / cell volume); enables Mode::exact means.
  std::optional<std::vector<double>> cell_means;
  /// Per-cell essential infima (exact, or a lower bound for sums); where no
  /// closed form exists the smaller of sample and cell mean is used.
  std::optional<std::vector<double>> cell_infima;
  /// Cells closer than this many cells to the box boundary are not valid
  /// (used by grid heat convolution outputs).
  int invalid_margin = 0;

  bool is_valid_cell(std::size_t k) const;
  double sup_abs() const;
};

struct SampleOptions {
  bool exact_means = false;
  bool exact_infima = false;
};

/// values[k] = f(cell centre k). Throws DomainError if a centre hits the
/// singular set of f.
GridFunction sample(const AnalyticFunction& f, const Domain& d, SampleOptions options = {});

GridFunction constant_grid(const Domain& d, double c);

/// Pointwise combination a*f + b*g over a shared domain; exact means combine
/// linearly, exact infima are dropped.
GridFunction combine(const GridFunction& f, double a, const GridFunction& g, double b);

/// Precomputed per-row prefix sums and range-min/max tables answering ball
/// queries in O(rows) time. Ball membership is cell-centre inclusion
/// |x_k - c| <= r (up to a relative 1e-12 tolerance).
class BallIndex {
 public:
  BallIndex(const GridFunction& g, Mode mode);

  /// Cell-measure-weighted average over member cells.
  double mean(const Ball& b) const;
  double minimum(const Ball& b) const;
  double maximum(const Ball& b) const;
  std::size_t count(const Ball& b) const;

  /// Calls fn(flat_index) for every member cell, rows ascending.
  template <class Fn>
  void for_each_cell(const Ball& b, Fn&& fn) const {
    for_each_row(b, [&](int row, int i0, int i1) {
      for (int i = i0; i <= i1; ++i) fn(domain_.flat_index(i, row));
    });
  }

  const Domain& domain() const { return domain_; }
  Mode mode() const { return mode_; }

 private:
  struct SparseTable {
    std::vector<std::vector<double>> levels;
    void build(const double* data, int n, bool take_min);
    double query(int i0, int i1, bool take_min) const;
  };

  /// fn(row, first column, last column) for every row the ball meets.
  template <class Fn>
  void for_each_row(const Ball& b, Fn&& fn) const;

  Domain domain_;
  Mode mode_;
  int rows_ = 1;
  std::vector<long double> prefix_;  // rows_ * (N + 1)
  std::vector<SparseTable> mins_;
  std::vector<SparseTable> maxs_;
};

/// Mean over the ball of g; Mode::exact requires g.cell_means.
double mean_over_ball(const GridFunction& g, const Ball& b, Mode mode = Mode::grid);
/// Minimum of g over member cells (exact mode: per-cell exact infima if known).
double essinf_over_ball(const GridFunction& g, const Ball& b, Mode mode = Mode::grid);

/// Dyadic radii {2h, 4h, ...} up to L/2.
std::vector<double> dyadic_radii(const Domain& d);

/// All (cell centre, radius) pairs whose ball, widened by half a cell, stays
/// at least `margin` inside the box, i.e. per axis the centre index k obeys
/// min(k, N-1-k) * h > r + margin. Order: radius-major, then flat cell index.
std::vector<Ball> enumerate_balls(const Domain& d, const std::vector<double>& radii,
                                  double margin = 0.0);

// ---- implementation details -------------------------------------------------

template <class Fn>
void BallIndex::for_each_row(const Ball& b, Fn&& fn) const {
  const double h = domain_.spacing();
  const double L = domain_.half_width;
  const int n = domain_.cells_per_axis;
  const double r = b.radius;
  const double tol = 1e-12;
  auto column_range = [&](double half, int& i0, int& i1) {
    const double lo = (b.center[0] - half + L) / h - 0.5;
    const double hi = (b.center[0] + half + L) / h - 0.5;
    i0 = std::max(0, static_cast<int>(std::ceil(lo - 1e-9)));
    i1 = std::min(n - 1, static_cast<int>(std::floor(hi + 1e-9)));
  };
  if (domain_.dimension == 1) {
    int i0, i1;
    column_range(r, i0, i1);
    if (i0 <= i1) fn(0, i0, i1);
    return;
  }
  int j0 = std::max(0, static_cast<int>(std::ceil((b.center[1] - r + L) / h - 0.5 - 1e-9)));
  int j1 = std::min(n - 1, static_cast<int>(std::floor((b.center[1] + r + L) / h - 0.5 + 1e-9)));
  for (int j = j0; j <= j1; ++j) {
    const double dy = domain_.coordinate(j) - b.center[1];
    double a2 = r * r - dy * dy;
    if (a2 < -tol * r * r) continue;
    const double half = std::sqrt(std::max(a2, 0.0)) * (1.0 + tol);
    int i0, i1;
    column_range(half, i0, i1);
    if (i0 <= i1) fn(j, i0, i1);
  }
}

}  // namespace blo
