#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "blo/analytic.hpp"

using namespace blo;

namespace {

Box interval(double a, double b) { return Box{{a, 0.0}, {b, 0.0}}; }

}  // namespace

TEST_CASE("point evaluation") {
  const auto f = AnalyticFunction::neg_log_abs();
  CHECK(f.evaluate(Point{1.0, 0.0}, 1) == 0.0);
  CHECK(f.evaluate(Point{std::exp(-1.0), 0.0}, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(AnalyticFunction::gaussian_bump(1.0).evaluate(Point{}, 1) == 1.0);
  CHECK_THROWS_AS(f.evaluate(Point{}, 1), DomainError);
  CHECK(AnalyticFunction::power_law(-0.5).evaluate(Point{}, 2) == 0.0);
}

TEST_CASE("closed-form cell integrals") {
  CHECK(AnalyticFunction::neg_log_abs().cell_integral(interval(0.0, 0.3), 1) ==
        doctest::Approx(0.3 * (1.0 - std::log(0.3))).epsilon(1e-15));
  CHECK(AnalyticFunction::constant(2.0).cell_integral(Box{{0.1, -0.2}, {0.4, 0.3}}, 2) ==
        doctest::Approx(2.0 * 0.3 * 0.5).epsilon(1e-15));
  CHECK(AnalyticFunction::power_law(0.5).cell_integral(interval(0.0, 0.7), 1) ==
        doctest::Approx(2.0 * std::sqrt(0.7)).epsilon(1e-14));
  // Indicator of the unit disc over a box containing it.
  CHECK(AnalyticFunction::indicator(Ball{Point{}, 1.0}).cell_integral(Box{{-2, -2}, {2, 2}}, 2) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("interval defect of -ln|x|") {
  CHECK(neglog_interval_defect(0.0, 0.37) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(neglog_interval_defect(0.2, 0.2 * std::numbers::e) == doctest::Approx(0.418023293130674).epsilon(1e-13));
  CHECK(neglog_interval_defect(0.2, 0.2 * std::numbers::e) ==
        doctest::Approx(1.0 - 1.0 / (std::numbers::e - 1.0)).epsilon(1e-13));
  CHECK(neglog_interval_defect(-0.4, 0.4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(neglog_interval_defect(0.5, 0.5), DomainError);
}

TEST_CASE("BLO norm oracle of -ln|x|") {
  const double v = neglog_blo_norm_oracle();
  CHECK(v > 1.0);
  CHECK(v <= 2.0);
  CHECK(v == doctest::Approx(1.278464542761074).epsilon(1e-12));
  // Dense cross-check on r in [1, 100], log-spaced.
  double best = 0.0;
  for (int i = 0; i <= 1000000; ++i) {
    const double r = std::exp(std::log(100.0) * i / 1e6);
    best = std::max(best, 1.0 + std::log(r) / (1.0 + r));
  }
  CHECK(std::abs(best - v) <= 1e-6);
}

TEST_CASE("property: interval defect bounds and mirror symmetry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 2000; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-6) continue;
    const double v = neglog_interval_defect(a, b);
    CHECK(v <= 2.0);
    CHECK(v >= 0.0);
    if (a >= 0.0) CHECK(v <= 1.0);
    CHECK(neglog_interval_defect(-b, -a) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("property: cell integrals are additive under bisection") {
  const auto neglog = AnalyticFunction::neg_log_abs();
  const std::vector<AnalyticFunction> family{
      AnalyticFunction::constant(1.5),
      AnalyticFunction::linear(),
      neglog,
      AnalyticFunction::log_abs(),
      AnalyticFunction::power_law(0.5),
      AnalyticFunction::power_law(-0.7),
      AnalyticFunction::gaussian_bump(0.05),
      AnalyticFunction::indicator(Ball{Point{0.1, -0.05}, 0.3}),
      AnalyticFunction::bounded_sine(0.5, 3.0),
      AnalyticFunction::shifted(neglog, Point{0.05, 0.02}),
      AnalyticFunction::scaled(neglog, 2.5),
      AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0)),
      AnalyticFunction::exponential(neglog, 0.5),
      AnalyticFunction::exponential(AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0)), 0.3),
  };
  // Boxes that straddle, touch, and avoid the origin.
  const std::vector<Box> boxes1{interval(-0.3, 0.5), interval(0.0, 0.4), interval(0.1, 0.7), interval(-0.9, -0.2)};
  const std::vector<Box> boxes2{Box{{-0.3, -0.2}, {0.5, 0.4}}, Box{{0.0, 0.0}, {0.4, 0.4}},
                                Box{{0.2, -0.6}, {0.7, 0.1}}};
  for (const auto& f : family) {
    CAPTURE(f.describe());
    for (int dim : {1, 2}) {
      if (f.kind() == Kind::Exponential && dim == 2) continue;
      for (const Box& b : dim == 1 ? boxes1 : boxes2) {
        const double whole = f.cell_integral(b, dim);
        for (int axis = 0; axis < dim; ++axis) {
          const double mid = 0.5 * (b.lo[axis] + b.hi[axis]);
          Box left = b, right = b;
          left.hi[axis] = mid;
          right.lo[axis] = mid;
          const double parts = f.cell_integral(left, dim) + f.cell_integral(right, dim);
          CHECK(parts == doctest::Approx(whole).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("classification and validation") {
  CHECK(AnalyticFunction::neg_log_abs().classification().is_blo);
  CHECK_FALSE(AnalyticFunction::log_abs().classification().is_blo);
  CHECK(AnalyticFunction::log_abs().classification().is_bmo);
  CHECK(AnalyticFunction::indicator(Ball{Point{}, 0.5}).classification().is_linfty);
  CHECK_THROWS_AS(AnalyticFunction::power_law(1.5).validate(1), DomainError);
  CHECK_NOTHROW(AnalyticFunction::power_law(1.5).validate(2));
  CHECK_THROWS_AS(AnalyticFunction::exponential(AnalyticFunction::neg_log_abs(), 1.2).validate(1), DomainError);
  CHECK(AnalyticFunction::sum(AnalyticFunction::neg_log_abs(), AnalyticFunction::bounded_sine(0.5, 3.0)).describe() ==
        "Sum(NegLogAbs,BoundedSine(0.5,3))");
}

TEST_CASE("exact infima") {
  const auto f = AnalyticFunction::neg_log_abs();
  CHECK(*f.infimum_over_box(interval(0.2, 0.6), 1) == doctest::Approx(-std::log(0.6)).epsilon(1e-15));
  CHECK(*f.infimum_over_box(interval(-0.9, 0.3), 1) == doctest::Approx(-std::log(0.9)).epsilon(1e-15));
  CHECK(std::isinf(*AnalyticFunction::log_abs().infimum_over_box(interval(-0.1, 0.3), 1)));
  CHECK(*AnalyticFunction::bounded_sine(0.5, 3.0).infimum_over_box(interval(0.0, 3.0), 1) == -0.5);
}

TEST_CASE("exponential closed forms of logs") {
  const auto w = exponential_closed_form(AnalyticFunction::neg_log_abs(), 0.5);
  REQUIRE(w.has_value());
  CHECK(w->kind() == Kind::PowerLawWeight);
  CHECK(w->evaluate(Point{0.25, 0.0}, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_FALSE(exponential_closed_form(AnalyticFunction::gaussian_bump(0.1), 1.0).has_value());
}
