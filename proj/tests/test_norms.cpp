#include <doctest.h>

#include <cmath>

#include "blo/analytic.hpp"
#include "blo/experiments.hpp"
#include "blo/norms.hpp"

using namespace blo;

namespace {

const Domain kLine{1, 1.0, 1024};

std::vector<Ball> line_balls() { return enumerate_balls(kLine, dyadic_radii(kLine)); }

}  // namespace

TEST_CASE("BLO and BMO norms of simple inputs") {
  const auto balls = line_balls();
  CHECK(blo_norm(AnalyticFunction::constant(5.0), kLine, balls).value == 0.0);
  CHECK(bmo_norm(AnalyticFunction::constant(5.0), kLine, balls).value == 0.0);

  const NormEstimate e = blo_norm(AnalyticFunction::neg_log_abs(), kLine, balls, Mode::exact);
  CHECK(std::abs(e.value - neglog_blo_norm_oracle()) <= 0.02 * neglog_blo_norm_oracle());
  CHECK(e.value == doctest::Approx(1.278465).epsilon(1e-6));
  CHECK(e.ball_count == balls.size());

  // Indicator of (-0.25, 0.25): the witness ball sticks out of the support,
  // so the minimum is 0 and the value is the covered fraction.
  const auto ind = AnalyticFunction::indicator(Ball{Point{}, 0.25});
  const NormEstimate ie = blo_norm(ind, kLine, balls);
  CHECK(ie.value > 0.0);
  CHECK(ie.value <= 1.0);
  const GridFunction g = sample(ind, kLine);
  const BallIndex idx(g, Mode::grid);
  std::size_t inside = 0;
  idx.for_each_cell(ie.witness_ball, [&](std::size_t k) { inside += g.values[k] == 1.0; });
  CHECK(inside < idx.count(ie.witness_ball));
  CHECK(ie.value == doctest::Approx(double(inside) / idx.count(ie.witness_ball)).epsilon(1e-14));

  CHECK(bmo_norm(AnalyticFunction::neg_log_abs(), kLine, balls).value ==
        doctest::Approx(bmo_norm(AnalyticFunction::log_abs(), kLine, balls).value).epsilon(1e-14));
}

TEST_CASE("property: BMO is at most twice BLO over the family") {
  const auto balls = line_balls();
  const auto neglog = AnalyticFunction::neg_log_abs();
  for (const auto& f : {neglog, AnalyticFunction::indicator(Ball{Point{}, 0.5}),
                        AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0)),
                        AnalyticFunction::gaussian_bump(0.05), AnalyticFunction::bounded_sine(0.5, 3.0)}) {
    CAPTURE(f.describe());
    CHECK(bmo_norm(f, kLine, balls).value <= 2.0 * blo_norm(f, kLine, balls).value + 1e-12);
  }
}

TEST_CASE("property: constant shifts, positive scaling and translation") {
  const auto balls = line_balls();
  const auto neglog = AnalyticFunction::neg_log_abs();
  const auto sine = AnalyticFunction::sum(neglog, AnalyticFunction::bounded_sine(0.5, 3.0));
  for (const auto& f : {neglog, sine}) {
    const double base = blo_norm(f, kLine, balls).value;
    CHECK(blo_norm(AnalyticFunction::sum(f, AnalyticFunction::constant(3.25)), kLine, balls).value ==
          doctest::Approx(base).epsilon(1e-12));
    CHECK(blo_norm(AnalyticFunction::scaled(f, 2.0), kLine, balls).value == base * 2.0);
    CHECK(blo_norm(AnalyticFunction::scaled(f, 0.3), kLine, balls).value == doctest::Approx(0.3 * base).epsilon(1e-12));

    // Translate by a whole number of cells on a wider box.
    const Domain wide{1, 2.0, 2048};
    const Point by{0.25, 0.0};
    std::vector<Ball> moved = balls;
    for (Ball& b : moved) b.center = b.center + by;
    CHECK(blo_norm(AnalyticFunction::shifted(f, by), wide, moved).value ==
          doctest::Approx(blo_norm(f, wide, balls).value).epsilon(1e-12));
  }
}

TEST_CASE("ln|x| is not BLO: the interval estimate grows like ln k") {
  std::vector<int> ks;
  const auto v = logabs_divergence_sequence(&ks);
  REQUIRE(v.size() == 10);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  CHECK(v.back() > 5.0);
  // Successive doublings of k add about ln 2.
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] - v[i - 1] == doctest::Approx(std::log(2.0)).epsilon(0.1));
}

TEST_CASE("heat defect") {
  const HeatParams p;
  CHECK(heat_defect(AnalyticFunction::constant(5.0), Point{0.2, 0.0}, 0.1, 1, p) == 0.0);
  // Scale invariance of -ln|x| at the origin.
  const double d0 = heat_defect(AnalyticFunction::neg_log_abs(), Point{}, 1e-3, 1, p);
  for (double t : {1e-2, 1e-1, 1.0})
    CHECK(heat_defect(AnalyticFunction::neg_log_abs(), Point{}, t, 1, p) == doctest::Approx(d0).epsilon(1e-9));
  for (double t : {1e-3, 1e-1})
    CHECK(heat_defect(AnalyticFunction::neg_log_abs(), Point{}, t, 2, p) ==
          doctest::Approx(heat_defect(AnalyticFunction::neg_log_abs(), Point{}, 1.0, 2, p)).epsilon(1e-9));
  // Bounded inputs: at most twice the sup norm.
  for (const auto& f : {AnalyticFunction::bounded_sine(0.5, 3.0), AnalyticFunction::indicator(Ball{Point{}, 0.5})})
    for (double x : {0.0, 0.4, 0.55})
      for (double t : {1e-3, 0.1}) CHECK(heat_defect(f, Point{x, 0.0}, t, 1, p) <= 2.0 * *f.sup_norm());
}

TEST_CASE("heat functional") {
  const TimeGrid tg{1e-2, 1.0, 5};
  const HeatParams p;
  const auto sine = AnalyticFunction::bounded_sine(0.5, 3.0);
  CHECK(heat_blo_functional(AnalyticFunction::constant(2.0), tg, {Point{}, Point{0.3, 0.0}}, 1, p).value == 0.0);
  const NormEstimate s = heat_blo_functional(sine, tg, feature_centers(sine, 1).empty()
                                                           ? std::vector<Point>{Point{0.1, 0.0}, Point{0.6, 0.0}}
                                                           : feature_centers(sine, 1),
                                             1, p);
  CHECK(s.value <= 1.0);
  const auto neglog = AnalyticFunction::neg_log_abs();
  const NormEstimate v = heat_blo_functional(neglog, tg, feature_centers(neglog, 1), 1, p);
  const double ratio = v.value / neglog_blo_norm_oracle();
  CHECK(ratio >= 0.1);
  CHECK(ratio <= 10.0);
  CHECK(heat_blo_functional(neglog, tg.extended(1.0), feature_centers(neglog, 1), 1, p).value ==
        doctest::Approx(v.value).epsilon(0.05));
}

TEST_CASE("grid heat functional") {
  const Domain d{1, 4.0, 1024};
  const GridFunction g = sample(AnalyticFunction::neg_log_abs(), d);
  const NormEstimate e = heat_blo_functional(g, TimeGrid{1e-3, 1e-1, 4});
  CHECK(e.value > 0.4);
  CHECK(e.value < 0.6);
}

TEST_CASE("L-infinity perturbation") {
  const auto balls = line_balls();
  const auto f = AnalyticFunction::neg_log_abs();
  const PerturbationReport c = perturbation_check(f, AnalyticFunction::constant(0.7), kLine, balls);
  CHECK(c.lhs == doctest::Approx(c.f_norm).epsilon(1e-12));
  CHECK(c.slack == doctest::Approx(1.4).epsilon(1e-10));
  CHECK(c.pass);
  const PerturbationReport z = perturbation_check(f, AnalyticFunction::constant(0.0), kLine, balls);
  CHECK(z.lhs == z.rhs);
  CHECK(perturbation_check(f, AnalyticFunction::bounded_sine(0.5, 3.0), kLine, balls).pass);
  CHECK_THROWS_AS(perturbation_check(AnalyticFunction::log_abs(), AnalyticFunction::constant(1.0), kLine, balls),
                  DomainError);
}
