#pragma once

#include "czlab/exponents.hpp"

namespace czlab {

struct ScheduleConstants {
  double c_0 = 0.25;
  double C_0 = 16.0;
  double C_gate = 8.0;
  /// Multiplier of the predicted tail bound.
  double C_tail = 1.0;
};

/// Parameters of the level iteration at target level T.
///   sigma = (T/t_*)^{-p/(2m)} Kmom^{-1/m}
///   beta  = c_0^{2/(p-2)} sigma^{-2/(p-2)}
///   omega = beta^{(q-2)/q} sigma^{2/q}
/// and k is the largest k >= 0 with beta^k t_0 < T (k = 0 when T = t_0).
struct IterationSchedule {
  double T = 0.0;
  double t_star = 0.0;
  double t_0 = 0.0;
  double C_0 = 0.0;
  double c_0 = 0.0;
  double k_moment = 0.0;
  double sigma = 0.0;
  double beta = 0.0;
  double omega = 0.0;
  int iteration_count = 0;
  /// C_tail (T/t_*)^{-(p/2)(1-theta)} Kmom^theta.
  double tail_bound = 0.0;
};

/// beta and omega from sigma alone (the second and third schedule lines).
struct SigmaSchedule {
  double beta = 0.0;
  double omega = 0.0;
};
SigmaSchedule schedule_from_sigma(double sigma, double c_0, const ExponentSet& exps);

/// Largest k >= 0 with T / (beta^k t_0) > 1 + 1e-12; 0 if none.
int select_iteration_count(double T, double t_0, double beta);

/// Throws ValidationError if T < t_0 and ScheduleError if
/// c_0^{2/(p-2)} C_0^{2 nu/p} < C_gate.
IterationSchedule run_schedule(double T, double t_star, double k_moment, const ExponentSet& exps,
                               const ScheduleConstants& constants = {});

}  // namespace czlab
