#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blo/analytic.hpp"
#include "blo/maximal.hpp"
#include "blo/norms.hpp"

using namespace blo;

namespace {

// Every ball of the domain's lattice (centres at cell centres, radii k h)
// that contains x.
std::vector<Ball> balls_containing(const Domain& d, const Point& x, double r_max) {
  std::vector<Ball> out;
  const double h = d.spacing();
  for (std::size_t k = 0; k < d.cell_count(); ++k)
    for (double r = h; r <= r_max; r += h) {
      const Point c = d.cell_center(k);
      if (std::abs(c[0] - x[0]) <= r) out.push_back(Ball{c, r});
    }
  return out;
}

// Mean of |y|^{-1/2} over (a, 1) for a < 0, times 1^{1/2}.
double power_interval_ratio(double a) { return (2.0 * std::sqrt(-a) + 2.0) / (1.0 - a); }

}  // namespace

TEST_CASE("Hardy-Littlewood maximal function") {
  const Domain d{1, 8.0, 512};
  const Point x{3.0 - d.spacing() / 2, 0.0};
  SUBCASE("constant weight") {
    CHECK(hl_maximal(constant_grid(d, 1.0), x, balls_containing(d, x, 2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("indicator of [-1, 1] seen from x = 3") {
    const auto g = sample(AnalyticFunction::indicator(Ball{Point{}, 1.0}), d);
    CHECK(hl_maximal(g, x, balls_containing(d, x, 2.5)) == doctest::Approx(0.5).epsilon(0.01));
  }
  SUBCASE("no ball contains the point") {
    CHECK_THROWS_AS(hl_maximal(constant_grid(d, 1.0), x, {Ball{Point{-5.0, 0.0}, 0.5}}), DomainError);
  }
}

TEST_CASE("endpoint oracle for |x|^(-1/2)") {
  // Maximise over a < 0 the mean over (a, 1); the optimum is a = -(3 - 2 sqrt 2).
  double best = 0.0;
  for (int i = 1; i <= 1000000; ++i) best = std::max(best, power_interval_ratio(-3.0 * i / 1e6));
  CHECK(best == doctest::Approx(1.0 + std::numbers::sqrt2).epsilon(1e-9));
  CHECK(power_interval_ratio(-(3.0 - 2.0 * std::numbers::sqrt2)) ==
        doctest::Approx(1.0 + std::numbers::sqrt2).epsilon(1e-14));
}

TEST_CASE("Bennett maximal function") {
  const Domain d{1, 4.0, 256};
  const Point x{d.spacing() / 2, 0.0};
  CHECK(bennett_maximal(constant_grid(d, -2.0), x, balls_containing(d, x, 1.0)) == doctest::Approx(-2.0).epsilon(1e-14));
  const auto ind = sample(AnalyticFunction::indicator(Ball{Point{}, 1.0}), d);
  CHECK(bennett_maximal(ind, x, balls_containing(d, x, 0.5)) == 1.0);

  // sup (M~f - f) for -ln|x| is comparable to its BLO norm.
  const Domain line{1, 1.0, 2048};
  const auto f = sample(AnalyticFunction::neg_log_abs(), line, {true, true});
  const MaximalField m = maximal_function(f, dyadic_radii(line), Mode::exact, 0.0, true);
  double k = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (std::isfinite(m.values.values[i])) k = std::max(k, m.values.values[i] - f.values[i]);
  const double ratio = k / neglog_blo_norm_oracle();
  CHECK(ratio > 0.25);
  CHECK(ratio <= 1.0 + 1e-12);
}

TEST_CASE("A1 constants") {
  const Domain d{1, 1.0, 4096};
  const auto radii = dyadic_radii(d);
  const auto neglog = AnalyticFunction::neg_log_abs();
  CHECK(a1_constant_maximal(WeightFunction{AnalyticFunction::constant(0.0), 3.0}, d, radii).constant ==
        doctest::Approx(1.0).epsilon(1e-14));
  const A1Estimate half = a1_constant_maximal(WeightFunction{neglog, 0.5}, d, radii);
  CHECK(std::abs(half.constant - (1.0 + std::numbers::sqrt2)) <= 0.03 * (1.0 + std::numbers::sqrt2));
  CHECK(half.constant == doctest::Approx(2.41386844642976).epsilon(1e-12));
  // m <= w <= M gives at most M / m.
  const A1Estimate ind = a1_constant_maximal(WeightFunction{AnalyticFunction::indicator(Ball{Point{}, 0.5}), 1.0}, d, radii);
  CHECK(ind.constant >= 1.0);
  CHECK(ind.constant <= std::numbers::e);

  const TimeGrid tg{1e-2, 1.0, 5};
  const std::vector<Point> pts{Point{0.05, 0.0}, Point{0.3, 0.0}, Point{-0.7, 0.0}};
  CHECK(a1_constant_heat(WeightFunction{AnalyticFunction::constant(1.0), 0.5}, tg, pts, 1).constant ==
        doctest::Approx(1.0).epsilon(1e-10));
  const double heat = a1_constant_heat(WeightFunction{neglog, 0.5}, tg, pts, 1).constant;
  const double wide = a1_constant_heat(WeightFunction{neglog, 0.5}, tg.extended(1.0), pts, 1).constant;
  CHECK(std::isfinite(heat));
  CHECK(wide >= heat);
  CHECK(wide == doctest::Approx(heat).epsilon(0.05));
  CHECK(heat <= 1.05 * half.constant);
}

TEST_CASE("property: A1 constants are at least one") {
  const Domain d{1, 1.0, 1024};
  const auto radii = dyadic_radii(d);
  const TimeGrid tg{1e-2, 1.0, 4};
  const std::vector<Point> pts{Point{0.05, 0.0}, Point{0.3, 0.0}, Point{-0.45, 0.0}};
  const auto neglog = AnalyticFunction::neg_log_abs();
  for (const WeightFunction& w :
       {WeightFunction{neglog, 0.3}, WeightFunction{AnalyticFunction::gaussian_bump(0.05), 1.0},
        WeightFunction{AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0)), 0.5},
        WeightFunction{AnalyticFunction::constant(2.0), 0.1}}) {
    CAPTURE(w.base.describe());
    CHECK(a1_constant_maximal(w, d, radii).constant >= 1.0);
    CHECK(a1_constant_heat(w, tg, pts, 1).constant >= 1.0 - 1e-9);
  }
}

TEST_CASE("weight validation") {
  const auto neglog = AnalyticFunction::neg_log_abs();
  CHECK_THROWS_AS(WeightFunction({neglog, 0.0}).validate(1, {Point{0.5, 0.0}}), DomainError);
  CHECK_THROWS_AS(WeightFunction({neglog, 1.0}).validate(1, {Point{0.5, 0.0}}), DomainError);
  CHECK_THROWS_AS(WeightFunction({AnalyticFunction::constant(1000.0), 1.0}).validate(1, {Point{0.5, 0.0}}), DomainError);
  CHECK_NOTHROW(WeightFunction({neglog, 0.9}).validate(1, {Point{0.5, 0.0}}));
}

TEST_CASE("refinement divergence detector") {
  CHECK(refinement_diverges({1.0, 1.5, 2.0, 2.5}));
  CHECK_FALSE(refinement_diverges({1.0, 1.01, 1.011, 1.0111}));
  CHECK_FALSE(refinement_diverges({2.0, 1.9, 2.1, 2.3}));
  CHECK_FALSE(refinement_diverges({1.0, 1.5}));
}

TEST_CASE("exp(eps f) A1 probe") {
  const Domain d{1, 1.0, 512};
  const ProbeResult c = exp_a1_probe(AnalyticFunction::constant(2.0), {0.1, 0.2}, 10.0, d);
  REQUIRE(c.epsilon.has_value());
  CHECK(*c.epsilon == 0.1);
  CHECK(c.estimate.constant == doctest::Approx(1.0).epsilon(1e-14));

  const ProbeResult n = exp_a1_probe(AnalyticFunction::neg_log_abs(), {0.125, 0.25, 0.5}, 10.0, d);
  REQUIRE(n.epsilon.has_value());
  CHECK(*n.epsilon == 0.125);

  const ProbeResult l = exp_a1_probe(AnalyticFunction::log_abs(), {0.125, 0.25, 0.5}, 10.0, d);
  CHECK_FALSE(l.epsilon.has_value());
  CHECK(l.diverging);
  CHECK(l.note.find("grow") != std::string::npos);
}

TEST_CASE("N functional") {
  const TimeGrid tg{1e-2, 1.0, 5};
  const std::vector<Point> pts{Point{0.02, 0.0}, Point{0.3, 0.0}, Point{-0.6, 0.0}};
  const auto eps = epsilon_grid(1e-2, 0.9, 8);
  CHECK(n_functional(AnalyticFunction::constant(4.0), eps, tg, pts, 1).value <= 1e-9);

  std::vector<double> third;
  for (double e : eps) third.push_back(e / 4.0);
  for (const auto& f : {AnalyticFunction::neg_log_abs(), AnalyticFunction::indicator(Ball{Point{}, 0.5})}) {
    const double n1 = n_functional(f, eps, tg, pts, 1).value;
    const double n4 = n_functional(AnalyticFunction::scaled(f, 4.0), third, tg, pts, 1).value;
    CHECK(n4 == doctest::Approx(4.0 * n1).epsilon(1e-10));
  }

  // C0 can only grow when the time range grows (the extended grid's times
  // differ from the original ones in the last bit).
  const auto a = n_functional(AnalyticFunction::neg_log_abs(), eps, tg, pts, 1);
  const auto b = n_functional(AnalyticFunction::neg_log_abs(), eps, tg.extended(1.0), pts, 1);
  REQUIRE(a.C0.size() == b.C0.size());
  for (std::size_t i = 0; i < a.C0.size(); ++i) CHECK(b.C0[i] >= a.C0[i] * (1.0 - 1e-12));
}

TEST_CASE("epsilon grid") {
  const auto e = epsilon_grid(1e-2, 1.0, 16);
  REQUIRE(e.size() == 33);
  CHECK(e.front() == 1e-2);
  CHECK(e.back() == doctest::Approx(1.0));
}
