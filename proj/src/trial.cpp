#include "czlab/trial.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "czlab/errors.hpp"
#include "czlab/rng.hpp"
#include "czlab/solver.hpp"

namespace czlab {

namespace {

constexpr std::uint64_t kRhsStream = 2;

double ball_fraction_above(const ScalarField& phi, const std::vector<std::size_t>& nodes, double T) {
  std::size_t above = 0;
  for (std::size_t k : nodes) above += phi[k] > T ? 1 : 0;
  return static_cast<double>(above) / static_cast<double>(nodes.size());
}

}  // namespace

VectorField make_rhs(const ExperimentConfig& config, const Grid& grid, std::uint64_t seed) {
  const Mesh mesh(grid);
  VectorField f(grid);
  switch (config.f_pattern) {
    case FPattern::Zero:
      break;
    case FPattern::Smooth: {
      const double w = config.smooth_width * config.macro_radius;
      const double c = config.smooth_amplitude * std::sqrt(0.5);
      for (std::size_t e = 0; e < f.size(); ++e) {
        const Point x = mesh.barycenter(e);
        const double g = c * std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2.0 * w * w));
        f[e] = {g, g};
      }
      break;
    }
    case FPattern::SparseSpikes: {
      const int cells = static_cast<int>(std::lround(2.0 * config.macro_radius));
      const int origin = -static_cast<int>(std::lround(config.macro_radius));
      std::vector<Vec2> cell_value(static_cast<std::size_t>(cells) * cells, Vec2{0.0, 0.0});
      Rng rng(mix_seed(seed, kRhsStream));
      for (auto& v : cell_value) {
        const double u = rng.uniform();
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        if (u < config.spike_density) {
          v = {config.spike_amplitude * std::cos(angle), config.spike_amplitude * std::sin(angle)};
        }
      }
      for (std::size_t e = 0; e < f.size(); ++e) {
        const Point x = mesh.barycenter(e);
        const int ci = std::clamp(static_cast<int>(std::floor(x[0])) - origin, 0, cells - 1);
        const int cj = std::clamp(static_cast<int>(std::floor(x[1])) - origin, 0, cells - 1);
        f[e] = cell_value[static_cast<std::size_t>(cj) * cells + ci];
      }
      break;
    }
  }
  return f;
}

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.seed = seed;
  rec.C_Y = config.C_Y;
  try {
    config.validate();
    const ExponentSet exps = config.exponents();
    const double R = config.macro_radius;
    const Grid grid(R, config.spacing);
    const CoefficientField env = sample_environment(seed, R, config.flux());
    const VectorField f = make_rhs(config, grid, seed);

    DirichletProblem problem{env, Domain::box(grid), ScalarField(grid), f, config.solver_tolerance};
    problem.relative_tolerance = true;
    problem.residual_mode = ResidualMode::Bound;
    const SolveReport solved = solve(problem);
    rec.iterations = solved.iterations;
    rec.converged = solved.converged;
    rec.final_residual = solved.final_residual;
    rec.method = solved.method;
    if (!solved.converged) throw ConvergenceError("main solve: " + solved.message);
    const ScalarField& u = solved.solution;

    // every density is extended by zero outside B_R
    const Ball outer{{0.0, 0.0}, R};
    const Ball inner{{0.0, 0.0}, 0.5 * R};
    const ScalarField density = energy_density(u).masked(outer);
    const ScalarField fsq = f.squared_density().masked(outer);
    const ScalarField mgrad = maximal_fn(density, 1.0);
    rec.grad_l1 = coarsened_norm(density, {1.0, 1.0, outer, true});
    rec.f_norm = coarsened_norm(fsq, {exps.p / 2.0, 1.0, outer, true});
    rec.t_star = rec.grad_l1 + rec.f_norm;

    const std::vector<std::size_t> inner_nodes = grid.nodes_in(inner);
    const GoodLambdaParams base = config.good_lambda(1.0);
    rec.sigma = base.sigma;
    rec.omega = base.omega;
    rec.beta = base.beta(exps);

    const KField kfield = build_K_field(env, config.probes());
    rec.probes = kfield.probes;
    rec.censored_fraction = kfield.censored_fraction();
    rec.discarded = rec.censored_fraction > config.max_censored_fraction;
    rec.k_values = kfield.probed_values();
    const ScalarField k_power = kfield.nodal(grid, exps.q / 2.0).masked(outer);

    if (rec.t_star > 0.0) {
      const ScalarField mf = maximal_fn(fsq, 1.0);
      const ScalarField mk = maximal_fn(k_power, 1.0);
      const GoodLambdaFields fields{&mgrad, &fsq, &k_power, &mf, &mk};
      for (int j = config.ladder_min; j <= config.ladder_max; ++j) {
        TailRow tail;
        tail.T_over_tstar = std::pow(2.0, 0.5 * j);
        const double T = rec.t_star * tail.T_over_tstar;
        tail.fraction = ball_fraction_above(mgrad, inner_nodes, T);
        rec.tails.push_back(tail);

        GoodLambdaRow row;
        row.j = j;
        row.T_over_tstar = tail.T_over_tstar;
        row.t = T;
        try {
          const GoodLambdaReport gl =
              good_lambda_report(fields, config.good_lambda(T), exps, R, config.good_lambda_options());
          row.lhs = gl.lhs;
          row.rhs1 = gl.rhs1;
          row.rhs2 = gl.rhs2;
          row.rhs3 = gl.rhs3;
          row.c_meas = gl.c_meas;
          row.i1 = gl.i1;
          row.i2 = gl.i2;
          row.i3 = gl.i3;
          row.violations = gl.violations;
          row.simple_violations = gl.simple_violations;
          row.selected = gl.selected;
          row.exit_balls = gl.exit_balls;
          row.boundary_constant = gl.boundary_constant;
        } catch (const Error& e) {
          row.status = e.what();
        }
        rec.good_lambda.push_back(row);
      }
    }

    std::vector<double> k_nodes;
    for (std::size_t k : grid.nodes_in(outer)) {
      const std::size_t c = kfield.cell_index(grid.node(k));
      if (!kfield.censored[c]) k_nodes.push_back(kfield.K[c]);
    }
    const MomentReport moments = compute_Y_R(k_nodes, exps, config.C_Y);
    rec.Z_R = moments.Z_R;
    rec.Y_R = moments.Y_R;
    rec.identity_error = moments.identity_error;
    rec.jensen_passed = jensen_check(k_nodes, exps).passed;

    const W1pReport w = verify_w1p(density, mgrad, fsq, rec.Y_R, exps, R);
    rec.M = w.M;
    rec.w1p_lhs = w.lhs;
    rec.w1p_strong = w.strong_lhs;
    rec.w1p_rhs = w.rhs;
    rec.w1p_ratio = w.ratio;
    rec.w1p_strong_ratio = w.strong_ratio;

    const Ball probe{{0.0, 0.0}, 0.25 * R};
    const ScalarField v = harmonic_replacement(u, env, probe, 1e-10);
    const auto gap = caccioppoli_gap(u, v, probe, f);
    rec.cacc_lhs = gap.first;
    rec.cacc_rhs = gap.second;
    rec.membership_worst = membership_A(v, probe, kfield.nodal(grid)).worst_ratio;
    rec.ok = true;
  } catch (const Error& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

unsigned worker_count_from_env() {
  const char* v = std::getenv("CZLAB_WORKERS");
  if (v == nullptr) return 1;
  const long n = std::strtol(v, nullptr, 10);
  return n >= 1 ? static_cast<unsigned>(n) : 1u;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config, std::uint64_t first,
                                    std::size_t count, unsigned workers) {
  if (workers == 0) workers = worker_count_from_env();
  std::vector<TrialRecord> out(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = run_trial(config, first + i);
  };
  if (workers <= 1 || count <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

Calibration calibrate(const std::vector<TrialRecord>& records, double safety) {
  if (!(safety >= 1.0)) throw ValidationError("calibration safety factor must be >= 1");
  Calibration cal;
  for (const TrialRecord& r : records) {
    if (!r.usable()) continue;
    ++cal.trials;
    cal.max_unit_ratio = std::max(cal.max_unit_ratio, r.w1p_ratio * r.C_Y * r.C_Y);
    for (const GoodLambdaRow& row : r.good_lambda) {
      if (row.status != "ok") continue;
      if (std::isinf(row.c_meas)) {
        ++cal.infinite_c_meas;
        continue;
      }
      cal.max_c_meas = std::max(cal.max_c_meas, row.c_meas);
    }
  }
  if (cal.trials == 0) throw CalibrationError("no usable calibration trials");
  cal.C_Y = std::max(1.0, safety * std::sqrt(cal.max_unit_ratio));
  cal.C_good = safety * cal.max_c_meas;
  return cal;
}

}  // namespace czlab
