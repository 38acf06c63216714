#include <doctest.h>

#include <cmath>
#include <random>

#include "blo/analytic.hpp"
#include "blo/grid.hpp"

using namespace blo;

TEST_CASE("sampling at cell centres") {
  const Domain d{1, 1.0, 4};
  SUBCASE("constant") {
    for (double v : sample(AnalyticFunction::constant(3.0), Domain{2, 2.0, 8}).values) CHECK(v == 3.0);
  }
  SUBCASE("linear") {
    const auto g = sample(AnalyticFunction::linear(), d);
    const std::vector<double> want{-0.75, -0.25, 0.25, 0.75};
    for (int k = 0; k < 4; ++k) CHECK(g.values[k] == want[k]);
  }
  SUBCASE("-ln|x|") {
    const auto g = sample(AnalyticFunction::neg_log_abs(), d);
    const std::vector<double> want{std::log(4.0 / 3.0), std::log(4.0), std::log(4.0), std::log(4.0 / 3.0)};
    for (int k = 0; k < 4; ++k) CHECK(g.values[k] == doctest::Approx(want[k]).epsilon(1e-15));
  }
  SUBCASE("odd cell count rejected") { CHECK_THROWS_AS(sample(AnalyticFunction::linear(), Domain{1, 1.0, 5}), DomainError); }
  SUBCASE("centre on a singular point rejected") {
    // An off-centre log singularity can land on a cell centre.
    const auto f = AnalyticFunction::shifted(AnalyticFunction::neg_log_abs(), Point{0.25, 0.0});
    CHECK_THROWS_AS(sample(f, d), DomainError);
  }
}

TEST_CASE("ball means and infima") {
  const Domain d{1, 1.0, 64};
  SUBCASE("constant") {
    const auto g = constant_grid(d, 2.5);
    const Ball b{Point{0.1, 0.0}, 0.3};
    CHECK(mean_over_ball(g, b) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(essinf_over_ball(g, b) == 2.5);
    CHECK(mean_over_ball(g, b, Mode::exact) == doctest::Approx(2.5).epsilon(1e-15));
  }
  SUBCASE("linear mean is the midpoint") {
    const auto g = sample(AnalyticFunction::linear(), d);
    CHECK(mean_over_ball(g, interval_ball(-0.25, 0.625)) == doctest::Approx(0.1875).epsilon(1e-14));
  }
  SUBCASE("-ln|x| on (0, b), exact mode") {
    const auto g = sample(AnalyticFunction::neg_log_abs(), d, {true, true});
    CHECK(mean_over_ball(g, interval_ball(0.0, 0.5), Mode::exact) ==
          doctest::Approx(1.0 - std::log(0.5)).epsilon(1e-13));
  }
  SUBCASE("-ln|x| infimum on (a, b), a > 0") {
    const auto g = sample(AnalyticFunction::neg_log_abs(), d, {true, true});
    const Ball b = interval_ball(0.25, 0.75);
    CHECK(std::abs(essinf_over_ball(g, b) + std::log(0.75)) <= d.spacing() / 0.25);
    CHECK(essinf_over_ball(g, b, Mode::exact) == doctest::Approx(-std::log(0.75)).epsilon(1e-15));
    CHECK(essinf_over_ball(g, interval_ball(-0.5, 0.5), Mode::exact) ==
          doctest::Approx(-std::log(0.5)).epsilon(1e-15));
  }
  SUBCASE("exact mode needs cell means") {
    CHECK_THROWS_AS(BallIndex(sample(AnalyticFunction::linear(), d), Mode::exact), DomainError);
  }
  SUBCASE("empty ball") {
    CHECK_THROWS_AS(mean_over_ball(constant_grid(d, 1.0), Ball{Point{0.0, 0.0}, 1e-6}), DomainError);
  }
}

TEST_CASE("ball enumeration") {
  const auto two = enumerate_balls(Domain{1, 1.0, 4}, {0.25});
  REQUIRE(two.size() == 2);
  CHECK(two[0].center[0] == -0.25);
  CHECK(two[1].center[0] == 0.25);
  CHECK(enumerate_balls(Domain{1, 1.0, 8}, {0.125, 0.25}).size() == 10);
  CHECK_THROWS_AS(enumerate_balls(Domain{1, 1.0, 8}, {}), DomainError);
  CHECK_THROWS_AS(enumerate_balls(Domain{1, 1.0, 8}, {0.9}), DomainError);
  // Radius-major order.
  const auto balls = enumerate_balls(Domain{2, 1.0, 16}, dyadic_radii(Domain{2, 1.0, 16}));
  for (std::size_t i = 1; i < balls.size(); ++i) CHECK(balls[i - 1].radius <= balls[i].radius);
}

TEST_CASE("dyadic radii") {
  const auto r = dyadic_radii(Domain{1, 1.0, 64});
  // h = 1/32: 2h, 4h, 8h, 16h = L/2.
  REQUIRE(r.size() == 4);
  CHECK(r.front() == 2.0 / 32.0);
  CHECK(r.back() == 0.5);
}

TEST_CASE("property: mean dominates infimum, linearity, constant shifts") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> centre(-0.6, 0.6), radius(0.04, 0.35);
  for (int dim : {1, 2}) {
    // Radii of at least one cell width, so every ball holds a sample.
    const Domain d{dim, 1.0, dim == 1 ? 256 : 64};
    const auto f = sample(AnalyticFunction::sum(AnalyticFunction::neg_log_abs(), AnalyticFunction::bounded_sine(0.5, 3.0)),
                          d, {true, true});
    const auto g = sample(AnalyticFunction::gaussian_bump(0.1), d, {true, true});
    const auto shifted = combine(f, 1.0, constant_grid(d, 1.0), 3.0);
    const auto mix = combine(f, 2.0, g, -0.5);
    const BallIndex fi(f, Mode::grid), gi(g, Mode::grid), si(shifted, Mode::grid), mi(mix, Mode::grid);
    const BallIndex fe(f, Mode::exact);
    for (int k = 0; k < 200; ++k) {
      const Ball b{Point{centre(rng), dim == 2 ? centre(rng) : 0.0}, radius(rng)};
      CHECK(fi.mean(b) >= fi.minimum(b));
      CHECK(fe.mean(b) >= fe.minimum(b));
      CHECK(mi.mean(b) == doctest::Approx(2.0 * fi.mean(b) - 0.5 * gi.mean(b)).epsilon(1e-12));
      CHECK(si.minimum(b) == doctest::Approx(fi.minimum(b) + 3.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("property: grid means converge to the exact mean under refinement") {
  // Interval edges on cell boundaries for every N, so the grid mean is a
  // midpoint rule whose error must shrink at each doubling.
  const auto f = AnalyticFunction::neg_log_abs();
  const Ball b = interval_ball(0.125, 0.625);
  const double exact = (f.cell_integral(Box{{0.125, 0.0}, {0.625, 0.0}}, 1)) / 0.5;
  double first = 0.0, previous = INFINITY;
  for (int n = 16; n <= 128; n *= 2) {
    const double err = std::abs(mean_over_ball(sample(f, Domain{1, 1.0, n}), b) - exact);
    CHECK(err < previous + 1e-12);
    if (n == 16) first = err;
    previous = err;
  }
  // Midpoint rule: three doublings should gain close to a factor 64.
  CHECK(previous < first / 30.0);
}
