#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "czlab/covering.hpp"
#include "czlab/exponents.hpp"
#include "czlab/lattice.hpp"

namespace czlab {

/// Step parameters of the good-lambda inequality with its calibration
/// constants. beta = omega^{q/(q-2)} sigma^{-2/(q-2)} must reach C_gate.
struct GoodLambdaParams {
  double sigma = 0.125;
  double omega = 1.0;
  double t = 1.0;
  double C_gate = 8.0;
  double C_climb = 16.0;
  /// c in the level sets {M_1 |f|^2 > c sigma t} and {M_1 K^{q/2} > c omega^{q/2}}.
  double c_rhs = 0.5;

  double beta(const ExponentSet& exps) const;
  /// Throws ValidationError unless sigma in (0,1], omega, t > 0 and the gate holds.
  void validate(const ExponentSet& exps) const;
};

/// Smallest omega meeting the gate for this sigma: beta(omega) = C_gate.
double gate_omega(double sigma, double C_gate, const ExponentSet& exps);

enum class Alternative { GoodDecay = 1, BadF = 2, BadK = 3 };
std::string to_string(Alternative a);

/// Nodal fields consumed by the covering argument.
struct GoodLambdaFields {
  /// M_1(|grad u|^2).
  const ScalarField* maximal_gradient = nullptr;
  /// |f|^2 nodal density.
  const ScalarField* f_squared = nullptr;
  /// K^{q/2} nodal values.
  const ScalarField* k_power = nullptr;
  /// M_1(|f|^2) and M_1(K^{q/2}); needed by good_lambda_report only.
  const ScalarField* maximal_f = nullptr;
  const ScalarField* maximal_k = nullptr;
};

struct BallRecord {
  Ball ball;
  Alternative alternative = Alternative::GoodDecay;
  /// mean of K^{q/2} over B_{5r}, compared with omega^{q/2}.
  double k_average = 0.0;
  double k_threshold = 0.0;
  /// mean of |f|^2 over B_{20r}, compared with sigma t.
  double f_average = 0.0;
  double f_threshold = 0.0;
  /// |B_{5r} \ A(beta t)| / |B_{5r}|, counting grid nodes with M_1 > beta t.
  double bad_fraction = 0.0;
  /// Same, but also counting every lattice point of B_{5r} outside B_R.
  double bad_fraction_strict = 0.0;
  /// C_climb sigma |B_r| omega^{-q/(q-2)} sigma^{2/(q-2)} / |B_r| = C_climb sigma / beta.
  double climb_bound = 0.0;
  /// sigma / beta.
  double simple_bound = 0.0;
  /// Alternative (1) assigned but bad_fraction > climb_bound.
  bool violation = false;
  /// Alternative (1) assigned but bad_fraction > simple_bound.
  bool simple_violation = false;
};

/// Tests alternative (3), then (2), else (1) on the Vitali ball B_r(y).
/// Averages use the zero extension with full lattice-count denominators.
BallRecord classify_ball(const Ball& ball, const GoodLambdaFields& fields,
                         const GoodLambdaParams& params, const ExponentSet& exps,
                         double macro_radius);

struct GoodLambdaOptions {
  ExitBallOptions exit;
  /// Exit balls are built from every stride-th node in each direction.
  int candidate_stride = 2;
};

struct GoodLambdaReport {
  double t = 0.0;
  double sigma = 0.0;
  double omega = 0.0;
  double beta = 0.0;
  /// |B_{R/2} \ A(beta t)|.
  double lhs = 0.0;
  /// (sigma / beta) |B_{R/2} \ A(t)|.
  double rhs1 = 0.0;
  /// |{x in B_R : M_1 |f|^2 > c sigma t}|.
  double rhs2 = 0.0;
  /// |{x in B_R : M_1 K^{q/2} > c omega^{q/2}}|.
  double rhs3 = 0.0;
  /// lhs / (rhs1 + rhs2 + rhs3); 0 when both sides vanish.
  double c_meas = 0.0;
  std::size_t candidates = 0;
  std::size_t exit_balls = 0;
  std::size_t selected = 0;
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  std::size_t i3 = 0;
  std::size_t violations = 0;
  std::size_t simple_violations = 0;
  /// max of M_1 / t over nodes of B_{R/2} within distance 2 of A(t).
  double boundary_constant = 0.0;
  double worst_dilation = 0.0;
  std::vector<BallRecord> balls;

  double rhs() const { return rhs1 + rhs2 + rhs3; }
};

/// Runs the covering step at level t: A(t), exit balls from the candidate
/// points of B_{R/2} at distance > 2 from A(t), Vitali selection,
/// classification of each B_{5 r_i}(y_i) and the measured terms.
/// GeometryExhausted from exit_ball propagates.
GoodLambdaReport good_lambda_report(const GoodLambdaFields& fields, const GoodLambdaParams& params,
                                    const ExponentSet& exps, double macro_radius,
                                    const GoodLambdaOptions& options = {});

}  // namespace czlab
