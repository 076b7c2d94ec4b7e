#include "czlab/schedule.hpp"

#include <cmath>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

SigmaSchedule schedule_from_sigma(double sigma, double c_0, const ExponentSet& exps) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (!(c_0 > 0.0 && c_0 <= 0.5)) throw ValidationError("c_0 must lie in (0, 1/2]");
  const double p = exps.p;
  const double q = exps.q;
  SigmaSchedule s;
  s.beta = std::pow(c_0, 2.0 / (p - 2.0)) * std::pow(sigma, -2.0 / (p - 2.0));
  s.omega = std::pow(s.beta, (q - 2.0) / q) * std::pow(sigma, 2.0 / q);
  return s;
}

int select_iteration_count(double T, double t_0, double beta) {
  if (!(beta > 1.0)) throw ValidationError("beta must exceed 1");
  if (!(t_0 > 0.0) || !(T > 0.0)) throw ValidationError("levels must be positive");
  int k = 0;
  double level = t_0 * beta;
  while (T / level > 1.0 + 1e-12) {
    ++k;
    level *= beta;
  }
  return k;
}

IterationSchedule run_schedule(double T, double t_star, double k_moment, const ExponentSet& exps,
                               const ScheduleConstants& c) {
  if (!(t_star > 0.0)) throw ValidationError("t_star must be positive");
  if (!(k_moment >= 1.0)) throw ValidationError("K moment must be >= 1 (K >= 1)");
  if (!(c.C_0 > 0.0)) throw ValidationError("C_0 must be positive");
  const double p = exps.p;
  const double gate = std::pow(c.c_0, 2.0 / (p - 2.0)) * std::pow(c.C_0, 2.0 * exps.nu / p);
  if (!(gate >= c.C_gate)) {
    throw ScheduleError("c_0^{2/(p-2)} C_0^{2nu/p} = " + std::to_string(gate) +
                        " is below C_gate = " + std::to_string(c.C_gate) + "; raise C_0");
  }
  IterationSchedule s;
  s.T = T;
  s.t_star = t_star;
  s.C_0 = c.C_0;
  s.c_0 = c.c_0;
  s.t_0 = c.C_0 * t_star;
  s.k_moment = k_moment;
  if (!(T >= s.t_0 * (1.0 - 1e-12))) throw ValidationError("T must be >= t_0 = C_0 t_star");
  s.sigma = std::pow(T / t_star, -p / (2.0 * exps.m_schedule)) *
            std::pow(k_moment, -1.0 / exps.m_schedule);
  const SigmaSchedule sb = schedule_from_sigma(s.sigma, c.c_0, exps);
  s.beta = sb.beta;
  s.omega = sb.omega;
  s.iteration_count = select_iteration_count(T, s.t_0, s.beta);
  s.tail_bound = c.C_tail * std::pow(T / t_star, exps.tail_slope()) * std::pow(k_moment, exps.theta);
  return s;
}

}  // namespace czlab
