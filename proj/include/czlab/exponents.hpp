#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace czlab {

/// Exponent bookkeeping for the W^{1,p}-type estimate.
///
///   theta      = (p^2 + 2p) / (p^2 + 2q)
///   nu         = p^2 / (p^2 + 2q)
///   m_schedule = p/2 + (p+q)/(p-2)
///   n_moment   = max(1/2, s (p+2) q / (4 (q-p)))
///   k          = d q (p+2) / (q-p)
struct ExponentSet {
  double p = 4.0;
  double q = 8.0;
  double m_norm = 3.0;
  double s_integrability = 0.25;
  int dimension = 2;

  double theta = 0.0;
  double nu = 0.0;
  double m_schedule = 0.0;
  double n_moment = 0.0;
  double log_exponent_k = 0.0;

  /// Margin c in m_norm <= p (1 - theta) - c and s <= 4(q-p)/((p+2)q) - c.
  double margin = 0.0;
  /// m_norm <= p (1 - theta) - margin; false means q was chosen too small.
  bool q_admissible = false;
  /// s <= 4 (q-p) / ((p+2) q) - margin.
  bool s_admissible = false;

  /// Predicted tail slope -(p/2)(1 - theta).
  double tail_slope() const { return -0.5 * p * (1.0 - theta); }
};

/// Validates 2 < m_norm < p < q and 0 < s < 4/(m_norm+2), naming the
/// violated constraint, and fills the derived fields. Admissibility of q and
/// s is reported in the flags, not thrown.
ExponentSet derive_exponents(double p, double q, double m_norm, double s_integrability,
                             double margin = 0.0, int dimension = 2);

using Rational = boost::multiprecision::cpp_rational;

struct ExactExponents {
  Rational p;
  Rational q;
  Rational theta;
  Rational nu;
  Rational m_schedule;

  /// theta == p / (2 m_schedule) + 4 nu / p.
  bool schedule_identity() const;
  /// 2 theta / (p (1 - theta)) == (p+2) / (q-p).
  bool tail_identity() const;
};

/// Rational-arithmetic version for identity checks; requires 2 < p < q.
ExactExponents derive_exponents_exact(const Rational& p, const Rational& q);

}  // namespace czlab
