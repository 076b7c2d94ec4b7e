#include "czlab/goodlambda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "czlab/errors.hpp"

namespace czlab {

double GoodLambdaParams::beta(const ExponentSet& exps) const {
  const double q = exps.q;
  return std::pow(omega, q / (q - 2.0)) * std::pow(sigma, -2.0 / (q - 2.0));
}

void GoodLambdaParams::validate(const ExponentSet& exps) const {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw ValidationError("sigma must lie in (0, 1]");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  if (!(t > 0.0)) throw ValidationError("t must be positive");
  if (!(c_rhs > 0.0 && c_rhs <= 1.0)) throw ValidationError("c_rhs must lie in (0, 1]");
  if (!(beta(exps) >= C_gate)) {
    throw ValidationError("gate omega^{q/(q-2)} sigma^{-2/(q-2)} >= C_gate violated");
  }
}

double gate_omega(double sigma, double C_gate, const ExponentSet& exps) {
  const double q = exps.q;
  // tiny inflation keeps beta >= C_gate after rounding
  return std::pow(C_gate, (q - 2.0) / q) * std::pow(sigma, 2.0 / q) * (1.0 + 1e-12);
}

std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::GoodDecay: return "1";
    case Alternative::BadF: return "2";
    case Alternative::BadK: return "3";
  }
  return "?";
}

BallRecord classify_ball(const Ball& ball, const GoodLambdaFields& fields,
                         const GoodLambdaParams& params, const ExponentSet& exps,
                         double macro_radius) {
  if (!fields.maximal_gradient || !fields.f_squared || !fields.k_power) {
    throw ValidationError("classify_ball: missing input field");
  }
  const ScalarField& mgrad = *fields.maximal_gradient;
  const Grid& grid = mgrad.grid();
  const double R = grid.macro_radius();
  if (std::abs(ball.center[0]) > R || std::abs(ball.center[1]) > R) {
    throw DomainError("classify_ball: centre outside the grid");
  }
  if (!(ball.radius >= 1.0 - 1e-12)) throw ValidationError("classify_ball: radius below 1");

  const double beta = params.beta(exps);
  BallRecord rec;
  rec.ball = ball;
  rec.k_average = disc_average(*fields.k_power, ball.center, 5.0 * ball.radius);
  rec.k_threshold = std::pow(params.omega, exps.q / 2.0);
  rec.f_average = disc_average(*fields.f_squared, ball.center, 20.0 * ball.radius);
  rec.f_threshold = params.sigma * params.t;
  rec.simple_bound = params.sigma / beta;
  rec.climb_bound = params.C_climb * params.sigma *
                    std::pow(params.omega, -exps.q / (exps.q - 2.0)) *
                    std::pow(params.sigma, 2.0 / (exps.q - 2.0));

  const Ball big{ball.center, 5.0 * ball.radius};
  const Ball domain{{0.0, 0.0}, macro_radius};
  const double level = beta * params.t;
  const int n = grid.nodes_per_axis();
  const int i0 = static_cast<int>(std::floor(grid.lattice_coordinate(big.center[0] - big.radius)));
  const int i1 = static_cast<int>(std::ceil(grid.lattice_coordinate(big.center[0] + big.radius)));
  const int j0 = static_cast<int>(std::floor(grid.lattice_coordinate(big.center[1] - big.radius)));
  const int j1 = static_cast<int>(std::ceil(grid.lattice_coordinate(big.center[1] + big.radius)));
  std::size_t total = 0;
  std::size_t bad = 0;
  std::size_t bad_strict = 0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Point z = grid.node(i, j);
      if (!big.contains(z)) continue;
      ++total;
      const bool on_grid = i >= 0 && j >= 0 && i < n && j < n;
      const bool high = on_grid && mgrad.at(i, j) > level;
      if (high) ++bad;
      if (high || !on_grid || !domain.contains(z)) ++bad_strict;
    }
  }
  rec.bad_fraction = static_cast<double>(bad) / static_cast<double>(total);
  rec.bad_fraction_strict = static_cast<double>(bad_strict) / static_cast<double>(total);

  if (rec.k_average > rec.k_threshold) {
    rec.alternative = Alternative::BadK;
  } else if (rec.f_average > rec.f_threshold) {
    rec.alternative = Alternative::BadF;
  } else {
    rec.alternative = Alternative::GoodDecay;
    rec.violation = rec.bad_fraction > rec.climb_bound;
    rec.simple_violation = rec.bad_fraction > rec.simple_bound;
  }
  return rec;
}

GoodLambdaReport good_lambda_report(const GoodLambdaFields& fields, const GoodLambdaParams& params,
                                    const ExponentSet& exps, double macro_radius,
                                    const GoodLambdaOptions& options) {
  params.validate(exps);
  if (!fields.maximal_gradient || !fields.maximal_f || !fields.maximal_k) {
    throw ValidationError("good_lambda_report: missing maximal field");
  }
  if (options.candidate_stride < 1) throw ValidationError("candidate_stride must be >= 1");
  const ScalarField& mgrad = *fields.maximal_gradient;
  const Grid& grid = mgrad.grid();
  const double R = macro_radius;
  const double t = params.t;
  const double beta = params.beta(exps);
  const double cell = grid.node_measure();

  GoodLambdaReport rep;
  rep.t = t;
  rep.sigma = params.sigma;
  rep.omega = params.omega;
  rep.beta = beta;

  const Ball outer{{0.0, 0.0}, R};
  const Ball inner{{0.0, 0.0}, 0.5 * R};
  const LevelSet a_t = sublevel_set(mgrad, t, outer);

  const auto inner_nodes = grid.nodes_in(inner);
  std::size_t above_beta = 0;
  std::size_t above_t = 0;
  for (std::size_t k : inner_nodes) {
    if (mgrad[k] > beta * t) ++above_beta;
    if (mgrad[k] > t) ++above_t;
  }
  rep.lhs = above_beta * cell;
  rep.rhs1 = params.sigma / beta * (above_t * cell);
  const double f_level = params.c_rhs * params.sigma * t;
  const double k_level = params.c_rhs * std::pow(params.omega, exps.q / 2.0);
  std::size_t f_count = 0;
  std::size_t k_count = 0;
  for (std::size_t k : grid.nodes_in(outer)) {
    if ((*fields.maximal_f)[k] > f_level) ++f_count;
    if ((*fields.maximal_k)[k] > k_level) ++k_count;
  }
  rep.rhs2 = f_count * cell;
  rep.rhs3 = k_count * cell;
  if (rep.lhs > 0.0) {
    rep.c_meas = rep.rhs() > 0.0 ? rep.lhs / rep.rhs() : std::numeric_limits<double>::infinity();
  }

  std::vector<Ball> balls;
  for (std::size_t k : inner_nodes) {
    const Point x = grid.node(k);
    const double d = distance_to_set(grid, a_t, x, 2.0);
    if (d <= 2.0) {
      rep.boundary_constant = std::max(rep.boundary_constant, mgrad[k] / t);
      continue;
    }
    if (grid.column(k) % options.candidate_stride != 0 ||
        grid.row(k) % options.candidate_stride != 0) {
      continue;
    }
    ++rep.candidates;
    balls.push_back(exit_ball(grid, x, a_t, R, options.exit).ball);
  }
  rep.exit_balls = balls.size();
  if (balls.empty()) return rep;

  const auto kept = vitali_select(balls);
  const VitaliCheck check = verify_vitali(balls, kept);
  if (!check.disjoint || !check.covered) throw ContractError("Vitali selection check failed");
  rep.worst_dilation = check.worst_dilation;
  rep.selected = kept.size();
  for (std::size_t i : kept) {
    BallRecord rec = classify_ball(balls[i], fields, params, exps, R);
    switch (rec.alternative) {
      case Alternative::GoodDecay: ++rep.i1; break;
      case Alternative::BadF: ++rep.i2; break;
      case Alternative::BadK: ++rep.i3; break;
    }
    if (rec.violation) ++rep.violations;
    if (rec.simple_violation) ++rep.simple_violations;
    rep.balls.push_back(rec);
  }
  return rep;
}

}  // namespace czlab
