#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "czlab/config.hpp"
#include "czlab/regularity.hpp"
#include "czlab/tailfit.hpp"
#include "czlab/trial.hpp"

namespace czlab {

struct EnsembleSummary {
  std::size_t trials = 0;
  std::size_t failed = 0;
  std::size_t discarded = 0;

  TailTable tails;
  std::optional<TailFit> fit;
  std::string fit_error;

  std::size_t levels = 0;
  std::size_t level_errors = 0;
  std::size_t balls = 0;
  std::size_t violations = 0;
  std::size_t simple_violations = 0;
  double max_c_meas = 0.0;
  /// Levels with LHS > C_good RHS (infinite C_meas included).
  std::size_t c_meas_exceed = 0;

  std::size_t w1p_pass = 0;
  double w1p_pass_fraction = 0.0;
  double max_w1p_ratio = 0.0;
  std::size_t strong_form_failures = 0;

  /// Running mean of exp(Y_R^s) over the first n usable trials.
  std::vector<double> exp_moment_curve;
  ConcavityReport concavity;
  std::size_t jensen_failures = 0;
  double max_identity_error = 0.0;
  double max_cacc_ratio = 0.0;
};

EnsembleSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records);

struct EnsembleResult {
  /// The configuration with calibrated constants frozen in.
  ExperimentConfig config;
  std::optional<Calibration> calibration;
  std::vector<TrialRecord> calibration_records;
  std::vector<TrialRecord> records;
  EnsembleSummary summary;
};

/// Calibrates C_Y and C_good on the calibration seeds (when calibration_size
/// > 0), then runs ensemble_size trials from base_seed with them frozen.
EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned workers = 0);

/// Writes trials.csv, tails.csv, goodlambda.csv, moments.csv, summary.json,
/// tail.svg, khist.svg, ymoment.svg and trial_<seed>.json into `directory`.
/// Every file records the config hash and the constants. IoError on failure.
void emit_report(const EnsembleResult& result, const std::string& directory);

/// One trial as JSON text (the trial_<seed>.json payload).
std::string trial_json(const ExperimentConfig& config, const TrialRecord& record);

/// Inverse of trial_json; IoError on malformed input.
TrialRecord read_trial_json(const std::string& text);

/// `# czlab config_hash=... C_lip=... ...` line heading every CSV.
std::string provenance_line(const ExperimentConfig& config);

}  // namespace czlab
