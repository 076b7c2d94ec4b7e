#include <cmath>
#include <vector>

#include "czlab/covering.hpp"
#include "czlab/errors.hpp"
#include "czlab/exponents.hpp"
#include "czlab/goodlambda.hpp"
#include "czlab/rng.hpp"
#include "czlab/schedule.hpp"
#include "doctest.h"

using namespace czlab;

TEST_CASE("exponents at p = 4, q = 8") {
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  CHECK(e.theta == doctest::Approx(0.75));
  CHECK(e.nu == doctest::Approx(0.5));
  CHECK(e.m_schedule == doctest::Approx(8.0));
  CHECK(e.n_moment == doctest::Approx(0.75));
  CHECK(e.log_exponent_k == doctest::Approx(24.0));
  CHECK(e.tail_slope() == doctest::Approx(-0.5));
  CHECK_FALSE(e.q_admissible);
  CHECK(e.s_admissible);
  CHECK_THROWS_AS(derive_exponents(4, 3, 3, 0.25), ValidationError);
  CHECK_THROWS_AS(derive_exponents(4, 8, 1.5, 0.25), ValidationError);
}

TEST_CASE("exact exponent identities") {
  const ExactExponents x = derive_exponents_exact(Rational(7, 2), Rational(11, 3));
  CHECK(x.schedule_identity());
  CHECK(x.tail_identity());
  CHECK(derive_exponents_exact(4, 8).theta == Rational(3, 4));
}

TEST_CASE("vitali selection keeps the larger of two overlapping balls") {
  const std::vector<Ball> balls{{{0, 0}, 1.0}, {{1, 0}, 2.0}, {{10, 0}, 0.5}};
  const auto kept = vitali_select(balls);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == 1);
  CHECK(kept[1] == 2);
}

TEST_CASE("vitali selection on random families") {
  Rng rng(12);
  for (int f = 0; f < 200; ++f) {
    std::vector<Ball> balls;
    const std::size_t n = 1 + rng.index(40);
    for (std::size_t i = 0; i < n; ++i) balls.push_back({{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.1, 2)});
    const auto kept = vitali_select(balls);
    const VitaliCheck c = verify_vitali(balls, kept);
    CHECK(c.disjoint);
    CHECK(c.covered);
    CHECK(c.worst_dilation <= 5.0);
  }
}

TEST_CASE("exit ball contact radius has the closed form") {
  const Grid g(8.0, 0.5);
  ScalarField phi(g, 1.0);
  phi[g.index(20, 16)] = 0.0;  // node (2, 0)
  const LevelSet A = sublevel_set(phi, 0.5, Ball{{0, 0}, 8.0});
  REQUIRE(A.count == 1);
  ExitBallOptions opt;
  opt.radius_cap = 4.0;
  const ExitBall e = exit_ball(g, {-1.0, 0.0}, A, 8.0, opt);
  CHECK(e.contact_radius == doctest::Approx(1.5));
  CHECK(e.ball.radius == doctest::Approx(1.5 * (1.0 + 1.0 / 16.0)));
  CHECK(e.ball.center[0] == doctest::Approx(-1.0 + e.ball.radius));
  CHECK(distance_to_set(g, A, {-1.0, 0.0}, 10.0) == doctest::Approx(3.0));
}

TEST_CASE("gate omega meets the gate exactly") {
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  GoodLambdaParams p;
  p.sigma = 0.125;
  p.omega = gate_omega(p.sigma, 8.0, e);
  CHECK(p.beta(e) == doctest::Approx(8.0));
  CHECK_NOTHROW(p.validate(e));
  p.omega *= 0.5;
  CHECK_THROWS_AS(p.validate(e), ValidationError);
}

TEST_CASE("ball classification follows the alternatives in order") {
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  const Grid g(10.0, 0.5);
  const ScalarField zero(g);
  const ScalarField huge(g, 1e6);
  GoodLambdaParams p;
  p.omega = gate_omega(p.sigma, p.C_gate, e);
  const Ball b{{0, 0}, 1.0};
  const BallRecord good = classify_ball(b, {&zero, &zero, &zero}, p, e, 10.0);
  CHECK(good.alternative == Alternative::GoodDecay);
  CHECK(good.bad_fraction == 0.0);
  CHECK_FALSE(good.violation);
  CHECK(classify_ball(b, {&zero, &huge, &zero}, p, e, 10.0).alternative == Alternative::BadF);
  CHECK(classify_ball(b, {&zero, &huge, &huge}, p, e, 10.0).alternative == Alternative::BadK);
  const BallRecord climb = classify_ball(b, {&huge, &zero, &zero}, p, e, 10.0);
  CHECK(climb.alternative == Alternative::GoodDecay);
  CHECK(climb.violation);
}

TEST_CASE("iteration schedule") {
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  CHECK(select_iteration_count(8.0, 1.0, 2.0) == 2);
  CHECK(select_iteration_count(1.0, 1.0, 2.0) == 0);
  const SigmaSchedule s = schedule_from_sigma(0.5, 0.25, e);
  CHECK(s.beta == doctest::Approx(0.25 * 2.0));
  CHECK(s.omega == doctest::Approx(std::pow(s.beta, 0.75) * std::pow(0.5, 0.25)));
  CHECK_THROWS_AS(run_schedule(1e4, 1.0, 1.0, e), ScheduleError);
  ScheduleConstants loose;
  loose.c_0 = 0.5;
  loose.C_gate = 1.0;
  const IterationSchedule it = run_schedule(1e4, 1.0, 1.0, e, loose);
  CHECK(it.sigma == doctest::Approx(0.1));
  CHECK(it.beta == doctest::Approx(5.0));
  CHECK(it.iteration_count == 3);
  CHECK(it.tail_bound == doctest::Approx(0.01));
  CHECK_THROWS_AS(run_schedule(0.5, 1.0, 1.0, e, loose), ValidationError);
}
