#include "blo/analytic.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace blo {

struct AnalyticFunction::Node {
  explicit Node(Kind k, double a = 0.0, double b = 0.0) : kind(k), p0(a), p1(b) {}
  Kind kind;
  double p0 = 0.0;
  double p1 = 0.0;
  Point offset{};
  Ball ball{};
  std::vector<AnalyticFunction> children;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// int ln|x| dx, zero at 0.
long double log_antiderivative(long double x) {
  if (x == 0) return 0;
  return x * std::log(std::fabs(x)) - x;
}

// int_0^x int_0^y ln(u^2 + v^2) dv du, signed.
long double log_antiderivative_2d(long double x, long double y) {
  if (x == 0 || y == 0) return 0;
  const long double a = std::fabs(x), b = std::fabs(y);
  const long double g = a * b * std::log(a * a + b * b) - 3 * a * b + a * a * std::atan(b / a) +
                        b * b * std::atan(a / b);
  return sgn(x) * sgn(y) * g;
}

// int_0^z (1 + u^2)^{-alpha/2} du by composite Gauss on dyadic panels.
double power_radial_helper(double z, double alpha) {
  const GaussRule& rule = gauss_legendre(16);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = mid + half * rule.nodes[i];
      s += rule.weights[i] * std::pow(1.0 + u * u, -0.5 * alpha);
    }
    return s * half;
  };
  double total = panel(0.0, std::min(z, 1.0));
  for (double lo = 1.0; lo < z; lo *= 2.0) total += panel(lo, std::min(2.0 * lo, z));
  return total;
}

// int over [0,a] x [0,b] of |x|^{-alpha}, a, b >= 0, in polar form.
double power_quadrant(double a, double b, double alpha) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double e = 2.0 - alpha;
  return (std::pow(a, e) * power_radial_helper(b / a, alpha) +
          std::pow(b, e) * power_radial_helper(a / b, alpha)) /
         e;
}

// Area of {0<=x<=a, 0<=y<=b, x^2+y^2<=r^2}.
double quadrant_disk_area(double a, double b, double r) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  a = std::min(a, r);
  b = std::min(b, r);
  if (a * a + b * b <= r * r) return a * b;
  const double xs = std::sqrt(std::max(r * r - b * b, 0.0));
  auto S = [r](double x) {
    return 0.5 * (x * std::sqrt(std::max(r * r - x * x, 0.0)) + r * r * std::asin(std::min(x / r, 1.0)));
  };
  return b * xs + S(a) - S(xs);
}

template <class F>
double inclusion_exclusion(const Box& box, F&& corner) {
  return corner(box.hi[0], box.hi[1]) - corner(box.lo[0], box.hi[1]) - corner(box.hi[0], box.lo[1]) +
         corner(box.lo[0], box.lo[1]);
}

// int_lo^hi exp(-y^2/(4a)) dy without tail cancellation.
double gaussian_axis_integral(double lo, double hi, double a) {
  const double s = 2.0 * std::sqrt(a);
  const double u0 = lo / s, u1 = hi / s;
  double diff;
  if (u0 >= 0.0)
    diff = std::erfc(u0) - std::erfc(u1);
  else if (u1 <= 0.0)
    diff = std::erfc(-u1) - std::erfc(-u0);
  else
    diff = std::erf(u1) - std::erf(u0);
  return std::sqrt(std::numbers::pi * a) * diff;
}

// min of sin over [p, q].
double sin_min(double p, double q) {
  if (q - p >= 2.0 * std::numbers::pi) return -1.0;
  const double two_pi = 2.0 * std::numbers::pi;
  const double k = std::ceil((p - 1.5 * std::numbers::pi) / two_pi);
  if (1.5 * std::numbers::pi + k * two_pi <= q) return -1.0;
  return std::min(std::sin(p), std::sin(q));
}

double sin_max(double p, double q) { return -sin_min(-q, -p); }

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Constant: return "Constant";
    case Kind::Linear: return "Linear";
    case Kind::NegLogAbs: return "NegLogAbs";
    case Kind::LogAbs: return "LogAbs";
    case Kind::PowerLawWeight: return "PowerLawWeight";
    case Kind::GaussianBump: return "GaussianBump";
    case Kind::Indicator: return "Indicator";
    case Kind::BoundedSine: return "BoundedSine";
    case Kind::Shifted: return "Shifted";
    case Kind::Scaled: return "Scaled";
    case Kind::Sum: return "Sum";
    case Kind::Exponential: return "Exponential";
  }
  return "?";
}

// ---- construction -----------------------------------------------------------

AnalyticFunction AnalyticFunction::constant(double c) {
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::Constant, c}));
}
AnalyticFunction AnalyticFunction::linear() {
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::Linear}));
}
AnalyticFunction AnalyticFunction::neg_log_abs() {
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::NegLogAbs}));
}
AnalyticFunction AnalyticFunction::log_abs() {
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::LogAbs}));
}
AnalyticFunction AnalyticFunction::power_law(double alpha) {
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::PowerLawWeight, alpha}));
}
AnalyticFunction AnalyticFunction::gaussian_bump(double a) {
  if (!(a > 0.0)) throw DomainError("GaussianBump requires a > 0");
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::GaussianBump, a}));
}
AnalyticFunction AnalyticFunction::indicator(const Ball& support) {
  if (!(support.radius > 0.0)) throw DomainError("Indicator requires a positive radius");
  Node n{Kind::Indicator};
  n.ball = support;
  return AnalyticFunction(std::make_shared<const Node>(std::move(n)));
}
AnalyticFunction AnalyticFunction::bounded_sine(double amplitude, double frequency) {
  if (frequency == 0.0) throw DomainError("BoundedSine requires a nonzero frequency");
  return AnalyticFunction(std::make_shared<const Node>(Node{Kind::BoundedSine, amplitude, frequency}));
}
AnalyticFunction AnalyticFunction::shifted(const AnalyticFunction& base, const Point& by) {
  Node n{Kind::Shifted};
  n.offset = by;
  n.children = {base};
  return AnalyticFunction(std::make_shared<const Node>(std::move(n)));
}
AnalyticFunction AnalyticFunction::scaled(const AnalyticFunction& base, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Scaled requires lambda > 0");
  Node n{Kind::Scaled, lambda};
  n.children = {base};
  return AnalyticFunction(std::make_shared<const Node>(std::move(n)));
}
AnalyticFunction AnalyticFunction::sum(const AnalyticFunction& base, const AnalyticFunction& bounded_part) {
  if (!bounded_part.classification().is_linfty)
    throw DomainError("Sum requires a bounded second term, got " + bounded_part.describe());
  Node n{Kind::Sum};
  n.children = {base, bounded_part};
  return AnalyticFunction(std::make_shared<const Node>(std::move(n)));
}
AnalyticFunction AnalyticFunction::exponential(const AnalyticFunction& base, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("Exponential requires epsilon > 0");
  Node n{Kind::Exponential, epsilon};
  n.children = {base};
  return AnalyticFunction(std::make_shared<const Node>(std::move(n)));
}

Kind AnalyticFunction::kind() const { return node_->kind; }
double AnalyticFunction::param(int i) const { return i == 0 ? node_->p0 : node_->p1; }
const Point& AnalyticFunction::offset() const { return node_->offset; }
const Ball& AnalyticFunction::support() const { return node_->ball; }
const AnalyticFunction& AnalyticFunction::child(int i) const { return node_->children.at(i); }

// ---- classification and description -----------------------------------------

Classification AnalyticFunction::classification() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant:
    case Kind::GaussianBump:
    case Kind::Indicator:
    case Kind::BoundedSine: return {true, true, true};
    case Kind::NegLogAbs: return {true, true, false};
    case Kind::LogAbs: return {false, true, false};
    case Kind::Linear:
    case Kind::PowerLawWeight: return {false, false, false};
    case Kind::Shifted:
    case Kind::Scaled: return n.children[0].classification();
    case Kind::Sum: {
      const Classification a = n.children[0].classification();
      return {a.is_blo, a.is_bmo, a.is_linfty};
    }
    case Kind::Exponential: {
      const bool bounded = n.children[0].classification().is_linfty;
      return {bounded, bounded, bounded};
    }
  }
  return {};
}

std::string AnalyticFunction::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return "Constant(" + num(n.p0) + ")";
    case Kind::PowerLawWeight: return "PowerLawWeight(" + num(n.p0) + ")";
    case Kind::GaussianBump: return "GaussianBump(" + num(n.p0) + ")";
    case Kind::Indicator:
      return "Indicator(c=(" + num(n.ball.center[0]) + "," + num(n.ball.center[1]) + "),r=" +
             num(n.ball.radius) + ")";
    case Kind::BoundedSine: return "BoundedSine(" + num(n.p0) + "," + num(n.p1) + ")";
    case Kind::Shifted:
      return "Shifted(" + n.children[0].describe() + ",(" + num(n.offset[0]) + "," + num(n.offset[1]) + "))";
    case Kind::Scaled: return "Scaled(" + n.children[0].describe() + "," + num(n.p0) + ")";
    case Kind::Sum: return "Sum(" + n.children[0].describe() + "," + n.children[1].describe() + ")";
    case Kind::Exponential: return "Exponential(" + n.children[0].describe() + "," + num(n.p0) + ")";
    default: return to_string(n.kind);
  }
}

void AnalyticFunction::validate(int dim) const {
  check_dimension(dim);
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::PowerLawWeight:
      if (!(n.p0 < dim))
        throw DomainError("PowerLawWeight(" + num(n.p0) + ") is not locally integrable in dimension " +
                          std::to_string(dim));
      break;
    case Kind::Exponential:
      if (!(n.p0 * n.children[0].log_singularity_strength() < dim))
        throw DomainError(describe() + " is not locally integrable in dimension " + std::to_string(dim));
      break;
    default: break;
  }
  for (const auto& c : n.children) c.validate(dim);
}

std::vector<Point> AnalyticFunction::singular_points() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::NegLogAbs:
    case Kind::LogAbs: return {Point{}};
    case Kind::PowerLawWeight:
      if (n.p0 == 0.0) return {};
      return {Point{}};
    case Kind::Shifted: {
      auto pts = n.children[0].singular_points();
      for (auto& p : pts) p = p + n.offset;
      return pts;
    }
    case Kind::Scaled:
    case Kind::Exponential: return n.children[0].singular_points();
    case Kind::Sum: {
      auto pts = n.children[0].singular_points();
      for (const auto& p : n.children[1].singular_points()) pts.push_back(p);
      return pts;
    }
    default: return {};
  }
}

// ---- evaluation ---------------------------------------------------------------

double AnalyticFunction::evaluate(const Point& x, int dim) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return n.p0;
    case Kind::Linear: return x[0];
    case Kind::NegLogAbs:
    case Kind::LogAbs: {
      const double r2 = norm2(x, dim);
      if (r2 == 0.0) throw DomainError(to_string(n.kind) + " evaluated on its singular set");
      const double v = 0.5 * std::log(r2);
      return n.kind == Kind::LogAbs ? v : -v;
    }
    case Kind::PowerLawWeight: {
      const double r2 = norm2(x, dim);
      if (n.p0 == 0.0) return 1.0;
      if (r2 == 0.0) {
        if (n.p0 > 0.0) throw DomainError("PowerLawWeight evaluated on its singular set");
        return 0.0;
      }
      return std::pow(r2, -0.5 * n.p0);
    }
    case Kind::GaussianBump: return std::exp(-norm2(x, dim) / (4.0 * n.p0));
    case Kind::Indicator: return dist2(x, n.ball.center, dim) <= n.ball.radius * n.ball.radius ? 1.0 : 0.0;
    case Kind::BoundedSine: return n.p0 * std::sin(n.p1 * x[0]);
    case Kind::Shifted: return n.children[0].evaluate(x - n.offset, dim);
    case Kind::Scaled: return n.p0 * n.children[0].evaluate(x, dim);
    case Kind::Sum: return n.children[0].evaluate(x, dim) + n.children[1].evaluate(x, dim);
    case Kind::Exponential: return std::exp(n.p0 * n.children[0].evaluate(x, dim));
  }
  return 0.0;
}

Roughness AnalyticFunction::roughness(const Box& box, int dim) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::NegLogAbs:
    case Kind::LogAbs:
    case Kind::PowerLawWeight:
      if (n.kind == Kind::PowerLawWeight && n.p0 == 0.0) return Roughness::smooth;
      return box.distance_to(Point{}, dim) < box.max_width(dim) ? Roughness::singular : Roughness::smooth;
    case Kind::Indicator: {
      const double r = n.ball.radius;
      return (box.distance_to(n.ball.center, dim) <= r && r <= box.farthest_from(n.ball.center, dim))
                 ? Roughness::kink
                 : Roughness::smooth;
    }
    case Kind::Shifted: return n.children[0].roughness(box.shifted(n.offset), dim);
    case Kind::Scaled:
    case Kind::Exponential: return n.children[0].roughness(box, dim);
    case Kind::Sum: return worst(n.children[0].roughness(box, dim), n.children[1].roughness(box, dim));
    default: return Roughness::smooth;
  }
}

double AnalyticFunction::length_scale() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::GaussianBump: return 2.0 * std::sqrt(n.p0);
    case Kind::BoundedSine: return 1.0 / std::abs(n.p1);
    case Kind::Shifted:
    case Kind::Scaled:
    case Kind::Exponential: return n.children[0].length_scale();
    case Kind::Sum: return std::min(n.children[0].length_scale(), n.children[1].length_scale());
    default: return kInf;
  }
}

double AnalyticFunction::log_singularity_strength() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::NegLogAbs: return 1.0;
    case Kind::LogAbs: return -1.0;
    case Kind::Scaled: return n.p0 * n.children[0].log_singularity_strength();
    case Kind::Shifted: return n.children[0].log_singularity_strength();
    case Kind::Sum: return n.children[0].log_singularity_strength();
    default: return 0.0;
  }
}

std::optional<double> AnalyticFunction::sup_norm() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Constant: return std::abs(n.p0);
    case Kind::GaussianBump:
    case Kind::Indicator: return 1.0;
    case Kind::BoundedSine: return std::abs(n.p0);
    case Kind::Shifted: return n.children[0].sup_norm();
    case Kind::Scaled: {
      auto s = n.children[0].sup_norm();
      if (!s) return std::nullopt;
      return n.p0 * *s;
    }
    case Kind::Sum: {
      auto a = n.children[0].sup_norm(), b = n.children[1].sup_norm();
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Kind::Exponential: {
      auto s = n.children[0].sup_norm();
      if (!s) return std::nullopt;
      return std::exp(n.p0 * *s);
    }
    default: return std::nullopt;
  }
}

// ---- exact integrals and infima ------------------------------------------------

std::optional<AnalyticFunction> exponential_closed_form(const AnalyticFunction& f, double eps) {
  switch (f.kind()) {
    case Kind::Constant: return AnalyticFunction::constant(std::exp(eps * f.param(0)));
    case Kind::NegLogAbs: return AnalyticFunction::power_law(eps);
    case Kind::LogAbs: return AnalyticFunction::power_law(-eps);
    case Kind::Scaled: return exponential_closed_form(f.child(0), eps * f.param(0));
    case Kind::Shifted: {
      auto inner = exponential_closed_form(f.child(0), eps);
      if (!inner) return std::nullopt;
      return AnalyticFunction::shifted(*inner, f.offset());
    }
    default: return std::nullopt;
  }
}

double AnalyticFunction::cell_integral(const Box& box, int dim) const {
  const Node& n = *node_;
  const bool far = roughness(box, dim) == Roughness::smooth;
  auto gauss16 = [&] { return gauss_tensor(box, dim, 16, [&](const Point& y) { return evaluate(y, dim); }); };
  auto other_axes = [&](double v) { return dim == 2 ? v * (box.hi[1] - box.lo[1]) : v; };

  switch (n.kind) {
    case Kind::Constant: return n.p0 * box.volume(dim);
    case Kind::Linear:
      return other_axes(0.5 * (box.hi[0] - box.lo[0]) * (box.hi[0] + box.lo[0]));
    case Kind::NegLogAbs:
    case Kind::LogAbs: {
      const double s = n.kind == Kind::LogAbs ? 1.0 : -1.0;
      if (dim == 1)
        return s * static_cast<double>(log_antiderivative(box.hi[0]) - log_antiderivative(box.lo[0]));
      if (far) return gauss16();
      const long double v = log_antiderivative_2d(box.hi[0], box.hi[1]) -
                            log_antiderivative_2d(box.lo[0], box.hi[1]) -
                            log_antiderivative_2d(box.hi[0], box.lo[1]) +
                            log_antiderivative_2d(box.lo[0], box.lo[1]);
      return s * 0.5 * static_cast<double>(v);
    }
    case Kind::PowerLawWeight: {
      const double alpha = n.p0;
      if (alpha == 0.0) return box.volume(dim);
      if (dim == 1) {
        auto P = [alpha](double x) { return sgn(x) * std::pow(std::abs(x), 1.0 - alpha) / (1.0 - alpha); };
        return P(box.hi[0]) - P(box.lo[0]);
      }
      if (far) return gauss16();
      return inclusion_exclusion(box, [alpha](double x, double y) {
        return sgn(x) * sgn(y) * power_quadrant(std::abs(x), std::abs(y), alpha);
      });
    }
    case Kind::GaussianBump: {
      double v = 1.0;
      for (int a = 0; a < dim; ++a) v *= gaussian_axis_integral(box.lo[a], box.hi[a], n.p0);
      return v;
    }
    case Kind::Indicator: {
      const Box rel = box.shifted(n.ball.center);
      const double r = n.ball.radius;
      if (dim == 1) return std::max(0.0, std::min(rel.hi[0], r) - std::max(rel.lo[0], -r));
      return inclusion_exclusion(rel, [r](double x, double y) {
        return sgn(x) * sgn(y) * quadrant_disk_area(std::abs(x), std::abs(y), r);
      });
    }
    case Kind::BoundedSine: {
      const double w = n.p1;
      const double v = 2.0 * std::sin(0.5 * w * (box.lo[0] + box.hi[0])) *
                       std::sin(0.5 * w * (box.hi[0] - box.lo[0])) / w;
      return other_axes(n.p0 * v);
    }
    case Kind::Shifted: return n.children[0].cell_integral(box.shifted(n.offset), dim);
    case Kind::Scaled: return n.p0 * n.children[0].cell_integral(box, dim);
    case Kind::Sum: return n.children[0].cell_integral(box, dim) + n.children[1].cell_integral(box, dim);
    case Kind::Exponential: {
      const double eps = n.p0;
      const AnalyticFunction& base = n.children[0];
      if (auto closed = exponential_closed_form(base, eps)) return closed->cell_integral(box, dim);
      // exp(eps (S + B)) ~ exp(eps B(centre)) exp(eps S) on a tiny box at a
      // singular point of S.
      std::optional<AnalyticFunction> singular_factor;
      std::optional<AnalyticFunction> bounded_factor;
      if (base.kind() == Kind::Sum) {
        singular_factor = exponential_closed_form(base.child(0), eps);
        bounded_factor = base.child(1);
      }
      AdaptiveRule rule{16, 1e-13 * box.max_width(dim), 90, dim == 1 ? 50 : 8};
      return integrate_adaptive(
          box, dim, rule, [&](const Point& y) { return evaluate(y, dim); },
          [&](const Box& b) { return roughness(b, dim); },
          [&](const Box& leaf, Roughness r) {
            if (r == Roughness::singular && singular_factor)
              return std::exp(eps * bounded_factor->evaluate(leaf.center(), dim)) *
                     singular_factor->cell_integral(leaf, dim);
            return gauss_tensor(leaf, dim, 16, [&](const Point& y) { return evaluate(y, dim); });
          });
    }
  }
  return 0.0;
}

std::optional<double> AnalyticFunction::infimum_over_box(const Box& box, int dim) const {
  const Node& n = *node_;
  const Point origin{};
  switch (n.kind) {
    case Kind::Constant: return n.p0;
    case Kind::Linear: return box.lo[0];
    case Kind::NegLogAbs: return -std::log(box.farthest_from(origin, dim));
    case Kind::LogAbs: {
      const double d = box.distance_to(origin, dim);
      return d == 0.0 ? -kInf : std::log(d);
    }
    case Kind::PowerLawWeight: {
      if (n.p0 == 0.0) return 1.0;
      if (n.p0 > 0.0) return std::pow(box.farthest_from(origin, dim), -n.p0);
      return std::pow(box.distance_to(origin, dim), -n.p0);
    }
    case Kind::GaussianBump: {
      const double r = box.farthest_from(origin, dim);
      return std::exp(-r * r / (4.0 * n.p0));
    }
    case Kind::Indicator: return box.farthest_from(n.ball.center, dim) <= n.ball.radius ? 1.0 : 0.0;
    case Kind::BoundedSine: {
      double p = n.p1 * box.lo[0], q = n.p1 * box.hi[0];
      if (p > q) std::swap(p, q);
      return n.p0 >= 0.0 ? n.p0 * sin_min(p, q) : n.p0 * sin_max(p, q);
    }
    case Kind::Shifted: return n.children[0].infimum_over_box(box.shifted(n.offset), dim);
    case Kind::Scaled: {
      auto v = n.children[0].infimum_over_box(box, dim);
      if (!v) return std::nullopt;
      return n.p0 * *v;
    }
    case Kind::Sum: {
      // Sum of the parts' infima: a lower bound, tight when they share a minimiser.
      auto u = n.children[0].infimum_over_box(box, dim), v = n.children[1].infimum_over_box(box, dim);
      if (!u || !v) return std::nullopt;
      return *u + *v;
    }
    case Kind::Exponential: {
      auto v = n.children[0].infimum_over_box(box, dim);
      if (!v) return std::nullopt;
      return std::exp(n.p0 * *v);
    }
  }
  return std::nullopt;
}

// ---- -ln|x| oracle ---------------------------------------------------------------

double neglog_interval_defect(double a, double b) {
  if (!(a < b)) throw DomainError("neglog_interval_defect requires a < b");
  if (a >= 0.0) {
    if (a == 0.0) return 1.0;
    const double u = (b - a) / a;  // b/a - 1
    return 1.0 - std::log1p(u) / u;
  }
  if (b <= 0.0) return neglog_interval_defect(-b, -a);
  // a < 0 < b: the infimum sits at the endpoint farther from 0.
  const double r = (-a > b) ? -a / b : b / -a;
  return 1.0 + std::log(r) / (1.0 + r);
}

double neglog_blo_norm_oracle() {
  // Golden-section search for the maximum of 1 + ln r / (1 + r) in u = ln r.
  auto phi = [](double u) { return 1.0 + u / (1.0 + std::exp(u)); };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = std::log(100.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = phi(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = phi(x1);
    }
  }
  return std::max(1.0, phi(0.5 * (lo + hi)));
}

}  // namespace blo
