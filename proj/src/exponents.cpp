#include "czlab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

ExponentSet derive_exponents(double p, double q, double m_norm, double s, double margin,
                             int dimension) {
  for (double v : {p, q, m_norm, s, margin}) {
    if (!std::isfinite(v)) throw ValidationError("exponents must be finite");
  }
  if (!(p > 2.0)) throw ValidationError("constraint p > 2 violated");
  if (!(q > p)) throw ValidationError("constraint q > p violated");
  if (!(m_norm > 2.0)) throw ValidationError("constraint m_norm > 2 violated");
  if (!(m_norm < p)) throw ValidationError("constraint m_norm < p violated");
  if (!(s > 0.0)) throw ValidationError("constraint s > 0 violated");
  if (!(s < 4.0 / (m_norm + 2.0))) throw ValidationError("constraint s < 4/(m_norm+2) violated");
  if (dimension < 2) throw ValidationError("constraint d >= 2 violated");
  if (margin < 0.0) throw ValidationError("margin must be >= 0");

  ExponentSet e;
  e.p = p;
  e.q = q;
  e.m_norm = m_norm;
  e.s_integrability = s;
  e.dimension = dimension;
  e.margin = margin;
  e.theta = (p * p + 2.0 * p) / (p * p + 2.0 * q);
  e.nu = p * p / (p * p + 2.0 * q);
  e.m_schedule = p / 2.0 + (p + q) / (p - 2.0);
  e.n_moment = std::max(0.5, s * (p + 2.0) * q / (4.0 * (q - p)));
  e.log_exponent_k = dimension * q * (p + 2.0) / (q - p);
  e.q_admissible = m_norm <= p * (1.0 - e.theta) - margin;
  e.s_admissible = s <= 4.0 * (q - p) / ((p + 2.0) * q) - margin;
  return e;
}

bool ExactExponents::schedule_identity() const {
  return theta == p / (2 * m_schedule) + 4 * nu / p;
}

bool ExactExponents::tail_identity() const {
  return 2 * theta / (p * (1 - theta)) == (p + 2) / (q - p);
}

ExactExponents derive_exponents_exact(const Rational& p, const Rational& q) {
  if (!(p > 2)) throw ValidationError("constraint p > 2 violated");
  if (!(q > p)) throw ValidationError("constraint q > p violated");
  ExactExponents e;
  e.p = p;
  e.q = q;
  e.theta = (p * p + 2 * p) / (p * p + 2 * q);
  e.nu = p * p / (p * p + 2 * q);
  e.m_schedule = p / 2 + (p + q) / (p - 2);
  return e;
}

}  // namespace czlab
