#pragma once

// Tensor Gauss-Legendre cells and the adaptive cell integrator shared by the
// analytic cell integrals and the heat-semigroup quadrature.

#include <vector>

#include "blo/types.hpp"

namespace blo {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Supported orders: 4, 6, 8, 10, 12, 16, 20, 24, 32.
const GaussRule& gauss_legendre(int order);

/// How a function behaves on a box, as far as polynomial quadrature is
/// concerned. `singular` means an integrable singularity (or a non-analytic
/// point) lies within one box width; `kink` means a jump crosses the box.
enum class Roughness { smooth = 0, kink = 1, singular = 2 };

inline Roughness worst(Roughness a, Roughness b) { return a > b ? a : b; }

struct AdaptiveRule {
  int order = 10;
  double leaf_width = 0.0;  // boxes at most this wide are handed to the leaf rule
  int max_depth = 60;
  int max_kink_depth = 40;
};

/// Tensor Gauss-Legendre sum of value(y) over the box.
template <class Value>
double gauss_tensor(const Box& box, int dim, int order, Value&& value) {
  const GaussRule& rule = gauss_legendre(order);
  const int m = static_cast<int>(rule.nodes.size());
  std::array<double, kMaxDim> half{}, mid{};
  for (int a = 0; a < dim; ++a) {
    half[a] = 0.5 * (box.hi[a] - box.lo[a]);
    mid[a] = 0.5 * (box.hi[a] + box.lo[a]);
  }
  double sum = 0.0;
  Point y{};
  if (dim == 1) {
    for (int i = 0; i < m; ++i) {
      y[0] = mid[0] + half[0] * rule.nodes[i];
      sum += rule.weights[i] * value(y);
    }
    return sum * half[0];
  }
  for (int j = 0; j < m; ++j) {
    y[1] = mid[1] + half[1] * rule.nodes[j];
    double row = 0.0;
    for (int i = 0; i < m; ++i) {
      y[0] = mid[0] + half[0] * rule.nodes[i];
      row += rule.weights[i] * value(y);
    }
    sum += rule.weights[j] * row;
  }
  return sum * half[0] * half[1];
}

/// Integrates over `box` by recursive bisection of every axis. Smooth boxes
/// get a tensor Gauss rule; rough boxes are split until they are narrower than
/// rule.leaf_width (or hit a depth cap), where leaf(box, roughness) supplies
/// the contribution. Children are visited in a fixed order, so the result is
/// deterministic.
template <class Value, class Rough, class Leaf>
double integrate_adaptive(const Box& box, int dim, const AdaptiveRule& rule, Value&& value,
                          Rough&& rough, Leaf&& leaf, int depth = 0) {
  const Roughness r = rough(box);
  if (r == Roughness::smooth) return gauss_tensor(box, dim, rule.order, value);
  if (box.max_width(dim) <= rule.leaf_width || depth >= rule.max_depth ||
      (r == Roughness::kink && depth >= rule.max_kink_depth))
    return leaf(box, r);
  const Point mid = box.center();
  double sum = 0.0;
  const int children = 1 << dim;
  for (int c = 0; c < children; ++c) {
    Box child = box;
    for (int a = 0; a < dim; ++a) {
      if (c & (1 << a))
        child.lo[a] = mid[a];
      else
        child.hi[a] = mid[a];
    }
    sum += integrate_adaptive(child, dim, rule, value, rough, leaf, depth + 1);
  }
  return sum;
}

}  // namespace blo
