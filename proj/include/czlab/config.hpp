#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "czlab/exponents.hpp"
#include "czlab/flux.hpp"
#include "czlab/goodlambda.hpp"
#include "czlab/regularity.hpp"
#include "czlab/schedule.hpp"

namespace czlab {

enum class FPattern { Zero, Smooth, SparseSpikes };
std::string to_string(FPattern pattern);
FPattern parse_f_pattern(const std::string& name);

/// Everything a trial depends on. Plain `key = value` text, `#` comments.
struct ExperimentConfig {
  double macro_radius = 32.0;
  double spacing = 0.25;
  double lambda_ellipticity = 4.0;
  FluxFamily family = FluxFamily::Linear;
  double perturbation_weight = 0.0;

  double p = 4.0;
  double q = 8.0;
  double m_norm = 3.0;
  double s = 0.25;
  double margin = 0.0;

  FPattern f_pattern = FPattern::SparseSpikes;
  /// Spike amplitude |f| and fraction of unit cells carrying a spike.
  double spike_amplitude = 10.0;
  double spike_density = 0.0005;
  /// Peak |f| and relative width (times R) of the smooth bump.
  double smooth_amplitude = 1.0;
  double smooth_width = 0.15;

  int ensemble_size = 100;
  std::uint64_t base_seed = 50;
  /// Seeds [calibration_seed, calibration_seed + calibration_size) freeze constants.
  std::uint64_t calibration_seed = 0;
  int calibration_size = 50;

  double solver_tolerance = 1e-8;

  double C_lip = 1.5;
  double C_Y = 1.0;
  double C_gate = 8.0;
  double C_climb = 16.0;
  double C_0 = 16.0;
  double c_0 = 0.25;
  double C_tail = 1.0;
  /// Frozen bound on C_meas = LHS / RHS of the covering inequality.
  double C_good = 0.0;
  double sigma = 0.125;
  double c_rhs = 0.5;
  double exit_epsilon = 1.0 / 16.0;
  /// Exit-ball radius cap as a fraction of R.
  double exit_cap_fraction = 0.125;
  int candidate_stride = 2;

  double probe_spacing = 0.5;
  double probe_radius = 8.0;
  int probe_stride = 2;
  double probe_tolerance = 1e-9;
  double max_censored_fraction = 0.01;

  /// Threshold ladder T_j = t_star 2^{j/2}, j in [ladder_min, ladder_max].
  int ladder_min = 2;
  int ladder_max = 12;
  double fit_lo = 4.0;
  double fit_hi = 64.0;

  std::string output_dir = "czlab-out";

  /// Throws ValidationError naming the offending key.
  void validate() const;
  FluxParams flux() const;
  ExponentSet exponents() const;
  ProbeConfig probes() const;
  GoodLambdaParams good_lambda(double t) const;
  GoodLambdaOptions good_lambda_options() const;
  ScheduleConstants schedule() const;
};

/// Parses and validates; unknown keys and malformed values are ValidationError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
/// Canonical text: every key in a fixed order, reals at 17 digits.
std::string canonical_text(const ExperimentConfig& config);
/// Applies one `key=value` override.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

std::uint64_t fnv1a64(const std::string& bytes);
/// 16 hex digits of fnv1a64(canonical_text(config)).
std::string config_hash(const ExperimentConfig& config);

}  // namespace czlab
