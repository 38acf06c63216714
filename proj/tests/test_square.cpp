#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "blo/analytic.hpp"
#include "blo/square_function.hpp"

using namespace blo;

namespace {

const SquareFunctionParams kParams{1e-6, 1e3, 16};

double gaussian_oracle(double a, double x, double lo, double hi) {
  auto q = [&](double u) {
    const double v = gaussian_bump_tdt_heat(a, Point{x, 0.0}, std::exp(u), 1);
    return v * v;
  };
  return std::sqrt(
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(q, std::log(lo), std::log(hi), 25, 1e-15));
}

}  // namespace

TEST_CASE("g-function on exact inputs") {
  CHECK(g_function(AnalyticFunction::constant(3.0), Point{0.2, 0.0}, 1, kParams).value <= 1e-12);
  CHECK(g_function(AnalyticFunction::linear(), Point{0.2, 0.0}, 1, kParams).value <= 1e-9);
  for (double x : {0.0, 0.4, 1.5}) {
    const double want = gaussian_oracle(0.5, x, kParams.s_min, kParams.s_max);
    CHECK(g_function(AnalyticFunction::gaussian_bump(0.5), Point{x, 0.0}, 1, kParams).value ==
          doctest::Approx(want).epsilon(1e-5));
  }
}

TEST_CASE("truncated g-function") {
  const auto f = AnalyticFunction::log_abs();
  const Point x{0.3, 0.0};
  CHECK(truncated_g(AnalyticFunction::constant(1.0), x, 0.5, 1, kParams).value <= 1e-12);
  // r^2 on the node lattice, so both sides see the same nodes.
  const double node = kParams.nodes()[80];
  const double r = std::sqrt(node);
  const GValue part = truncated_g(f, x, r, 1, kParams);
  const GValue full = g_function(f, x, 1, kParams);
  CHECK(part.value <= full.value);
  const double rest = g_integral(f, x, r * r, kParams.s_max, 1, kParams);
  CHECK(part.squared + rest == doctest::Approx(full.squared).epsilon(1e-9));
  CHECK_THROWS_AS(truncated_g(f, x, 1e-4, 1, kParams), DomainError);
}

TEST_CASE("property: nonnegativity, constants and scaling") {
  const auto sine = AnalyticFunction::bounded_sine(0.5, 3.0);
  const auto neglog = AnalyticFunction::neg_log_abs();
  for (const auto& f : {sine, neglog, AnalyticFunction::indicator(Ball{Point{}, 0.5})})
    for (double x : {0.0, 0.25, 0.5, 0.8}) {
      CAPTURE(f.describe());
      const double g = g_function(f, Point{x, 0.0}, 1, kParams).value;
      CHECK(g >= 0.0);
      CHECK(g_function(AnalyticFunction::sum(f, AnalyticFunction::constant(7.0)), Point{x, 0.0}, 1, kParams).value ==
            doctest::Approx(g).epsilon(1e-12));
      CHECK(g_function(AnalyticFunction::scaled(f, 3.0), Point{x, 0.0}, 1, kParams).value ==
            doctest::Approx(3.0 * g).epsilon(1e-10));
    }
}

TEST_CASE("property: tail estimates bound the extension change") {
  for (const auto& f : {AnalyticFunction::log_abs(), AnalyticFunction::bounded_sine(0.5, 3.0),
                        AnalyticFunction::gaussian_bump(0.1)})
    for (double x : {0.0, 0.3, 0.7}) {
      CAPTURE(f.describe());
      const GValue g = g_function(f, Point{x, 0.0}, 1, kParams);
      const GValue w = g_function(f, Point{x, 0.0}, 1, kParams.extended());
      CHECK(w.squared - g.squared <= (g.lower_tail + g.upper_tail) * (1.0 + 1e-6) + 1e-12);
    }
}

TEST_CASE("BLO analysis of the g-function") {
  const Domain d{1, 1.0, 64};
  const auto balls = enumerate_balls(d, dyadic_radii(d));
  const GBloReport c = g_blo_analysis(AnalyticFunction::constant(2.0), d, balls, kParams);
  CHECK(c.bmo == 0.0);
  CHECK(c.blo_g.value <= 1e-12);
  CHECK(c.per_ball_failures == 0);

  const GBloReport l = g_blo_analysis(AnalyticFunction::log_abs(), d, balls, kParams);
  const GBloReport s = g_blo_analysis(AnalyticFunction::bounded_sine(0.5, 3.0), d, balls, kParams);
  for (const GBloReport* r : {&l, &s}) {
    CHECK(std::isfinite(r->ratio_squared));
    CHECK(r->per_ball_failures == 0);
    CHECK(r->ratio <= std::sqrt(r->ratio_squared) + 1e-9);
  }
  CHECK(s.ratio_squared / l.ratio_squared > 0.1);
  CHECK(s.ratio_squared / l.ratio_squared < 10.0);
  CHECK_THROWS_AS(g_blo_analysis(AnalyticFunction::linear(), d, balls, kParams), DomainError);
}

TEST_CASE("node lattice") {
  const auto n = SquareFunctionParams{1e-2, 1.0, 4}.nodes();
  REQUIRE(n.size() == 9);
  CHECK(n.back() == 1.0);
  CHECK_THROWS_AS((SquareFunctionParams{1.0, 0.5, 4}.validate()), DomainError);
}
