#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "czlab/config.hpp"
#include "czlab/mesh.hpp"

namespace czlab {

/// Per-element right side f for the configured pattern; deterministic in seed.
///   zero:           f = 0.
///   smooth:         A exp(-|x|^2 / (2 (wR)^2)) (1, 1)/sqrt(2) at the barycenter.
///   sparse-spikes:  each unit cell independently carries, with probability
///                   spike_density, a constant vector of length A and uniform
///                   random direction.
VectorField make_rhs(const ExperimentConfig& config, const Grid& grid, std::uint64_t seed);

struct TailRow {
  double T_over_tstar = 0.0;
  /// |B_{R/2} ∩ {M_1(|grad u|^2) > T}| / |B_{R/2}| by node count.
  double fraction = 0.0;
};

struct GoodLambdaRow {
  int j = 0;
  double T_over_tstar = 0.0;
  double t = 0.0;
  /// "ok" or the error that aborted this level.
  std::string status = "ok";
  double lhs = 0.0;
  double rhs1 = 0.0;
  double rhs2 = 0.0;
  double rhs3 = 0.0;
  double c_meas = 0.0;
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::size_t i3 = 0;
  std::size_t violations = 0;
  std::size_t simple_violations = 0;
  std::size_t selected = 0;
  std::size_t exit_balls = 0;
  double boundary_constant = 0.0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  bool ok = false;
  /// Censored K probes above the configured fraction.
  bool discarded = false;
  std::string error;

  std::size_t iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  std::string method;

  double t_star = 0.0;
  double grad_l1 = 0.0;
  double f_norm = 0.0;
  std::vector<TailRow> tails;
  double sigma = 0.0;
  double omega = 0.0;
  double beta = 0.0;
  std::vector<GoodLambdaRow> good_lambda;

  std::size_t probes = 0;
  double censored_fraction = 0.0;
  /// K at probed, uncensored cells.
  std::vector<double> k_values;
  double C_Y = 0.0;
  double Z_R = 0.0;
  double Y_R = 0.0;
  double identity_error = 0.0;
  bool jensen_passed = false;

  double M = 0.0;
  double w1p_lhs = 0.0;
  double w1p_strong = 0.0;
  double w1p_rhs = 0.0;
  double w1p_ratio = 0.0;
  double w1p_strong_ratio = 0.0;

  /// Harmonic replacement on B_{R/4}(0).
  double cacc_lhs = 0.0;
  double cacc_rhs = 0.0;
  double membership_worst = 0.0;

  /// Wall time; kept out of every persisted file.
  double seconds = 0.0;

  bool usable() const { return ok && !discarded; }
};

/// Runs the whole pipeline for one seed. Module errors are caught and
/// recorded in `error` with ok = false.
TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t seed);

/// Trials for seeds [first, first + count) on `workers` threads (0: read
/// CZLAB_WORKERS, default 1). Output is ordered by seed.
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, std::uint64_t first,
                                    std::size_t count, unsigned workers = 0);

unsigned worker_count_from_env();

struct Calibration {
  std::size_t trials = 0;
  /// Largest w1p ratio at C_Y = 1.
  double max_unit_ratio = 0.0;
  double C_Y = 1.0;
  /// Largest finite C_meas over all levels.
  double max_c_meas = 0.0;
  double C_good = 0.0;
  std::size_t infinite_c_meas = 0;
};

/// C_Y = safety sqrt(max unit ratio), C_good = safety max C_meas.
Calibration calibrate(const std::vector<TrialRecord>& records, double safety = 2.0);

}  // namespace czlab
