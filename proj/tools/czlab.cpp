// Command-line front end: sample, solve, maximal, goodlambda, kfield, ensemble, report.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "czlab/config.hpp"
#include "czlab/errors.hpp"
#include "czlab/flux.hpp"
#include "czlab/goodlambda.hpp"
#include "czlab/lattice.hpp"
#include "czlab/regularity.hpp"
#include "czlab/report.hpp"
#include "czlab/solver.hpp"
#include "czlab/trial.hpp"

using namespace czlab;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_seed = true) {
  cmd->add_option("-c,--config", c.config_path, "key = value config file");
  cmd->add_option("--set", c.overrides, "override, key=value (repeatable)");
  if (with_seed) cmd->add_option("-s,--seed", c.seed, "environment seed");
}

ExperimentConfig resolve(const Common& c) {
  ExperimentConfig config = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
    set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  config.validate();
  return config;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

SolveReport solve_trial(const ExperimentConfig& config, std::uint64_t seed, VectorField* f_out = nullptr) {
  const Grid grid(config.macro_radius, config.spacing);
  const CoefficientField env = sample_environment(seed, config.macro_radius, config.flux());
  VectorField f = make_rhs(config, grid, seed);
  DirichletProblem problem{env, Domain::box(grid), ScalarField(grid), f, config.solver_tolerance};
  problem.relative_tolerance = true;
  SolveReport rep = solve(problem);
  if (f_out != nullptr) *f_out = std::move(f);
  return rep;
}

bool ensemble_checks_pass(const EnsembleResult& r) {
  const EnsembleSummary& s = r.summary;
  return s.failed == 0 && s.level_errors == 0 && s.violations == 0 && s.c_meas_exceed == 0 &&
         s.w1p_pass_fraction >= 0.95 && s.fit.has_value() &&
         s.fit->slope <= s.tails.predicted_slope + 0.15 && s.concavity.passed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"czlab: quenched Calderon-Zygmund experiments for random monotone fluxes"};
  app.require_subcommand(1);

  Common sample_c;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "draw an environment and write it as text");
  add_common(sample, sample_c);
  sample->add_option("-o,--out", sample_out, "output file (default stdout)");

  Common solve_c;
  std::string solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "solve the Dirichlet problem for one seed");
  add_common(solve_cmd, solve_c);
  solve_cmd->add_option("-o,--out", solve_out, "write the solution grid here");

  Common max_c;
  std::string max_out;
  double max_h = 1.0;
  auto* maximal = app.add_subcommand("maximal", "coarsened maximal function of |grad u|^2");
  add_common(maximal, max_c);
  maximal->add_option("--coarsening", max_h, "coarsening scale");
  maximal->add_option("-o,--out", max_out, "write the maximal field here");

  Common gl_c;
  double gl_ratio = 4.0;
  auto* goodlambda = app.add_subcommand("goodlambda", "covering step at t = ratio * t_star");
  add_common(goodlambda, gl_c);
  goodlambda->add_option("--ratio", gl_ratio, "t / t_star");

  Common k_c;
  std::string k_out;
  auto* kfield = app.add_subcommand("kfield", "per-cell X and K probes");
  add_common(kfield, k_c);
  kfield->add_option("-o,--out", k_out, "write the K field here");

  Common ens_c;
  std::string ens_out;
  bool ens_check = false;
  auto* ensemble = app.add_subcommand("ensemble", "calibrate, run the evaluation ensemble, write the report");
  add_common(ensemble, ens_c, false);
  ensemble->add_option("-o,--out", ens_out, "output directory (default: config output_dir)");
  ensemble->add_flag("--check", ens_check, "exit 1 unless the ensemble checks pass");

  Common rep_c;
  std::string rep_from, rep_out;
  auto* report = app.add_subcommand("report", "rebuild tables and plots from trial_<seed>.json files");
  add_common(report, rep_c, false);
  report->add_option("--from", rep_from, "directory holding trial_<seed>.json")->required();
  report->add_option("-o,--out", rep_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      const ExperimentConfig config = resolve(sample_c);
      const CoefficientField env = sample_environment(sample_c.seed, config.macro_radius, config.flux());
      if (sample_out.empty()) {
        write_field(std::cout, env);
      } else {
        auto out = open_out(sample_out);
        write_field(out, env);
      }
      return 0;
    }
    if (*solve_cmd) {
      const ExperimentConfig config = resolve(solve_c);
      const SolveReport rep = solve_trial(config, solve_c.seed);
      std::printf("method %s iterations %zu converged %d final_residual %.6e\n", rep.method.c_str(),
                  rep.iterations, rep.converged ? 1 : 0, rep.final_residual);
      if (!rep.message.empty()) std::printf("message %s\n", rep.message.c_str());
      if (!solve_out.empty()) {
        auto out = open_out(solve_out);
        write_grid_text(out, rep.solution);
      }
      return rep.converged ? 0 : 1;
    }
    if (*maximal) {
      const ExperimentConfig config = resolve(max_c);
      const SolveReport rep = solve_trial(config, max_c.seed);
      const ScalarField m = maximal_fn(energy_density(rep.solution), max_h);
      const auto v = m.values();
      std::printf("max %.6e mean %.6e\n", *std::max_element(v.begin(), v.end()),
                  std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()));
      if (!max_out.empty()) {
        auto out = open_out(max_out);
        write_grid_text(out, m);
      }
      return 0;
    }
    if (*goodlambda) {
      const ExperimentConfig config = resolve(gl_c);
      const ExponentSet exps = config.exponents();
      const double R = config.macro_radius;
      const Grid grid(R, config.spacing);
      VectorField f(grid);
      const SolveReport rep = solve_trial(config, gl_c.seed, &f);
      const Ball outer{{0.0, 0.0}, R};
      const ScalarField density = energy_density(rep.solution).masked(outer);
      const ScalarField fsq = f.squared_density().masked(outer);
      const double t_star = coarsened_norm(density, {1.0, 1.0, outer, true}) +
                            coarsened_norm(fsq, {exps.p / 2.0, 1.0, outer, true});
      const KField kf = build_K_field(sample_environment(gl_c.seed, R, config.flux()), config.probes());
      const ScalarField kp = kf.nodal(grid, exps.q / 2.0).masked(outer);
      const ScalarField mg = maximal_fn(density, 1.0);
      const ScalarField mf = maximal_fn(fsq, 1.0);
      const ScalarField mk = maximal_fn(kp, 1.0);
      const GoodLambdaFields fields{&mg, &fsq, &kp, &mf, &mk};
      const GoodLambdaReport g =
          good_lambda_report(fields, config.good_lambda(gl_ratio * t_star), exps, R, config.good_lambda_options());
      std::printf("t,LHS,RHS1,RHS2,RHS3,C_meas,I1,I2,I3\n%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%zu,%zu\n", g.t,
                  g.lhs, g.rhs1, g.rhs2, g.rhs3, g.c_meas, g.i1, g.i2, g.i3);
      std::printf("violations %zu simple_violations %zu selected %zu boundary_constant %.6g\n", g.violations,
                  g.simple_violations, g.selected, g.boundary_constant);
      return g.violations == 0 ? 0 : 1;
    }
    if (*kfield) {
      const ExperimentConfig config = resolve(k_c);
      const KField kf = build_K_field(sample_environment(k_c.seed, config.macro_radius, config.flux()),
                                      config.probes());
      std::printf("probes %zu censored %zu C_lip %.6g\n", kf.probes, kf.censored_probes, kf.C_lip);
      if (!k_out.empty()) {
        auto out = open_out(k_out);
        write_kfield_text(out, kf);
      }
      return kf.censored_fraction() <= config.max_censored_fraction ? 0 : 1;
    }
    if (*ensemble) {
      const ExperimentConfig config = resolve(ens_c);
      const EnsembleResult result = run_ensemble(config);
      const std::string dir = ens_out.empty() ? config.output_dir : ens_out;
      emit_report(result, dir);
      const EnsembleSummary& s = result.summary;
      std::printf("trials %zu failed %zu discarded %zu\n", s.trials, s.failed, s.discarded);
      if (s.fit) {
        std::printf("tail slope %.4f +- %.4f (predicted %.4f)\n", s.fit->slope, s.fit->stderr_slope,
                    s.tails.predicted_slope);
      } else {
        std::printf("tail fit: %s\n", s.fit_error.c_str());
      }
      std::printf("good-lambda levels %zu errors %zu violations %zu max C_meas %.4g C_good %.4g\n", s.levels,
                  s.level_errors, s.violations, s.max_c_meas, result.config.C_good);
      std::printf("w1p pass fraction %.4f\n", s.w1p_pass_fraction);
      std::printf("report written to %s (config %s)\n", dir.c_str(), config_hash(result.config).c_str());
      return ens_check && !ensemble_checks_pass(result) ? 1 : 0;
    }
    if (*report) {
      const ExperimentConfig config = resolve(rep_c);
      EnsembleResult result;
      result.config = config;
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(rep_from)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("trial_", 0) == 0 && entry.path().extension() == ".json") files.push_back(entry.path());
      }
      for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        result.records.push_back(read_trial_json(buf.str()));
      }
      std::sort(result.records.begin(), result.records.end(),
                [](const TrialRecord& a, const TrialRecord& b) { return a.seed < b.seed; });
      result.summary = summarize(config, result.records);
      emit_report(result, rep_out);
      std::printf("rebuilt report from %zu trials into %s\n", result.records.size(), rep_out.c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "czlab: %s\n", e.what());
    return 2;
  }
  return 0;
}
