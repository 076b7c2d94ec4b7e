#pragma once

#include <cstddef>
#include <vector>

#include "czlab/trial.hpp"

namespace czlab {

struct TailPoint {
  double T_over_tstar = 0.0;
  /// Mean over trials of |B_{R/2} ∩ {M_1 > T}| / |B_{R/2}|.
  double pooled_fraction = 0.0;
  std::size_t n_trials = 0;
};

struct TailTable {
  std::vector<TailPoint> points;
  /// -(p/2)(1 - theta).
  double predicted_slope = 0.0;
};

/// Pools the usable records with t_star > 0, ladder point by ladder point.
TailTable pool_tails(const std::vector<TrialRecord>& records, double predicted_slope);

struct TailFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::vector<double> x;
  std::vector<double> residuals;
};

/// Least squares of log(fraction) on log(T/t_star) over the window, using
/// points with a nonzero fraction. FitError with fewer than 5 such points.
TailFit fit_tail_exponent(const TailTable& table, double lo, double hi);

}  // namespace czlab
