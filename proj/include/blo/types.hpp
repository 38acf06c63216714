#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace blo {

inline constexpr int kMaxDim = 2;

/// A point of R^n, n <= kMaxDim. Unused trailing coordinates are zero.
using Point = std::array<double, kMaxDim>;

/// Raised when an input violates an operation's precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numeric routine cannot produce a trustworthy value.
/// Carries the name of the operation that failed.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string operation, const std::string& what)
      : std::runtime_error(operation + ": " + what), operation_(std::move(operation)) {}
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string operation_;
};

inline void check_dimension(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DomainError("dimension must be 1 or 2, got " + std::to_string(dim));
}

inline double dist2(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

inline double norm2(const Point& a, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * a[i];
  return s;
}

inline Point operator+(Point a, const Point& b) {
  for (int i = 0; i < kMaxDim; ++i) a[i] += b[i];
  return a;
}

inline Point operator-(Point a, const Point& b) {
  for (int i = 0; i < kMaxDim; ++i) a[i] -= b[i];
  return a;
}

/// Axis-aligned closed box [lo, hi] in R^n.
struct Box {
  Point lo{};
  Point hi{};

  double volume(int dim) const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= hi[i] - lo[i];
    return v;
  }
  double max_width(int dim) const {
    double w = 0.0;
    for (int i = 0; i < dim; ++i) w = std::max(w, hi[i] - lo[i]);
    return w;
  }
  Point center() const {
    Point c{};
    for (int i = 0; i < kMaxDim; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }
  Box shifted(const Point& by) const { return Box{lo - by, hi - by}; }

  /// Euclidean distance from the box to p (0 if p is inside).
  double distance_to(const Point& p, int dim) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = std::max({lo[i] - p[i], 0.0, p[i] - hi[i]});
      s += d * d;
    }
    return std::sqrt(s);
  }
  /// Largest distance from p to a point of the box.
  double farthest_from(const Point& p, int dim) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double d = std::max(std::abs(lo[i] - p[i]), std::abs(hi[i] - p[i]));
      s += d * d;
    }
    return std::sqrt(s);
  }
};

}  // namespace blo
