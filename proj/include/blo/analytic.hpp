#pragma once

// The closed-form test family: evaluation, exact cell integrals, exact
// per-box infima, declared space membership, and the closed-form interval
// defect of -ln|x| used as an oracle.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blo/grid.hpp"
#include "blo/quadrature.hpp"
#include "blo/types.hpp"

namespace blo {

enum class Kind {
  Constant,
  Linear,          // x_1
  NegLogAbs,       // -ln|x|
  LogAbs,          // ln|x|
  PowerLawWeight,  // |x|^{-alpha}
  GaussianBump,    // exp(-|x|^2 / (4a))
  Indicator,       // 1 on a closed ball
  BoundedSine,     // A sin(omega x_1)
  Shifted,         // base(x - h)
  Scaled,          // lambda * base, lambda > 0
  Sum,             // base + bounded_part
  Exponential,     // exp(eps * base); weights only, not user-facing
};

std::string to_string(Kind k);

struct Classification {
  bool is_blo = false;
  bool is_bmo = false;
  bool is_linfty = false;
};

/// Immutable expression tree over the fixed test family. Cheap to copy.
class AnalyticFunction {
 public:
  static AnalyticFunction constant(double c);
  static AnalyticFunction linear();
  static AnalyticFunction neg_log_abs();
  static AnalyticFunction log_abs();
  /// |x|^{-alpha}; alpha < n is checked by validate(). Negative alpha gives
  /// the growing weights |x|^{|alpha|}.
  static AnalyticFunction power_law(double alpha);
  static AnalyticFunction gaussian_bump(double a);
  static AnalyticFunction indicator(const Ball& support);
  static AnalyticFunction bounded_sine(double amplitude, double frequency);
  static AnalyticFunction shifted(const AnalyticFunction& base, const Point& by);
  static AnalyticFunction scaled(const AnalyticFunction& base, double lambda);
  static AnalyticFunction sum(const AnalyticFunction& base, const AnalyticFunction& bounded_part);
  static AnalyticFunction exponential(const AnalyticFunction& base, double epsilon);

  Kind kind() const;
  Classification classification() const;
  std::string describe() const;

  /// Throws DomainError if the function is not locally integrable in R^n.
  void validate(int dim) const;

  /// Points where the function is undefined or non-analytic.
  std::vector<Point> singular_points() const;
  /// Throws DomainError at a point of the singular set.
  double evaluate(const Point& x, int dim) const;
  /// Integral over the closed box. Closed forms for every base kind;
  /// Exponential of a non-power-law base uses graded Gauss quadrature.
  double cell_integral(const Box& box, int dim) const;
  /// Exact essential infimum over the box, when a closed form exists.
  /// May be -infinity (LogAbs across the origin).
  std::optional<double> infimum_over_box(const Box& box, int dim) const;
  /// sup |f| when finite and known in closed form.
  std::optional<double> sup_norm() const;
  /// s such that f ~ -s ln|x - p| near each singular point p.
  double log_singularity_strength() const;
  /// Smallest length over which the smooth part varies appreciably.
  double length_scale() const;
  Roughness roughness(const Box& box, int dim) const;

  /// Parameters, for serialisation.
  double param(int i) const;
  const Point& offset() const;
  const Ball& support() const;
  const AnalyticFunction& child(int i) const;

 private:
  struct Node;
  explicit AnalyticFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// f_I - essinf_I f for f = -ln|x| on I = (a, b), by the three-case closed
/// form. Throws DomainError unless a < b.
double neglog_interval_defect(double a, double b);

/// sup over intervals of the defect of -ln|x|: the larger of 1 (intervals
/// with an endpoint at 0) and max_{r>=1} 1 + ln r / (1 + r), found by
/// golden-section search.
double neglog_blo_norm_oracle();

/// exp(eps * f) as a closed-form kind when f is a (shifted, scaled) log or a
/// constant, otherwise nullopt.
std::optional<AnalyticFunction> exponential_closed_form(const AnalyticFunction& f, double eps);

}  // namespace blo
