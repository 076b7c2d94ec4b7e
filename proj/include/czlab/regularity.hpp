#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "czlab/exponents.hpp"
#include "czlab/flux.hpp"
#include "czlab/lattice.hpp"

namespace czlab {

struct LipschitzReport {
  double r_star = 0.0;
  /// (mean over the region of |grad u|^2)^{1/2}.
  double M_drive = 0.0;
  /// R^{-1} (min_a mean |u - a|)^{1/2}, logged for comparison.
  double M_oscillation = 0.0;
  /// r_star / log(2 + M_drive), unclamped.
  double X_estimate = 0.0;
  double C_lip = 0.0;
  /// max over ladder radii >= r_star of mean_{B_rho}|grad u|^2 / M_drive^2.
  double worst_ratio = 0.0;
};

/// Smallest radius rho_j = delta 2^{j/4} such that the disc mean of |grad u|^2
/// around the region centre is <= C_lip M_drive^2 for every ladder radius in
/// [rho_j, region.radius / 2]. CalibrationError if C_lip <= 0 or no radius
/// qualifies.
LipschitzReport minimal_radius(const ScalarField& u, const Ball& region, double C_lip);

/// Same, from a precomputed nodal |grad u|^2 (M_oscillation is left at 0).
LipschitzReport minimal_radius_from_density(const ScalarField& density, const Ball& region,
                                            double C_lip);

enum class ProbeMode {
  /// Local Dirichlet solves on B_{r_probe}(z) with affine data.
  LocalAffine,
  /// Global box solves with affine data, then harmonic replacement on each
  /// probe ball (warm started from the global solution).
  GlobalReference,
};

struct ProbeConfig {
  ProbeMode mode = ProbeMode::LocalAffine;
  double spacing = 0.25;
  double probe_radius = 8.0;
  /// Probe every stride-th cell in each direction.
  int stride = 2;
  double C_lip = 8.0;
  double tolerance = 1e-9;
  /// A trial whose censored fraction exceeds this is discarded.
  double max_censored_fraction = 0.01;
};

/// Per-unit-cell X and K = X^d log^d(2 + X), with X clamped to >= 1.
struct KField {
  double macro_radius = 0.0;
  int cells_per_axis = 0;
  int cell_origin = 0;
  int dimension = 2;
  double C_lip = 0.0;
  std::vector<double> X;
  std::vector<double> K;
  std::vector<std::uint8_t> probed;
  std::vector<std::uint8_t> censored;
  std::size_t probes = 0;
  std::size_t censored_probes = 0;

  double censored_fraction() const {
    return probes == 0 ? 0.0 : static_cast<double>(censored_probes) / static_cast<double>(probes);
  }
  std::size_t cell_index(const Point& x) const;
  /// Nodal values of K^power on the grid (cell of each node, half-open cells).
  ScalarField nodal(const Grid& grid, double power = 1.0) const;
  /// K at probed, uncensored cells.
  std::vector<double> probed_values() const;
};

double k_from_x(double X, int dimension = 2);

KField build_K_field(const CoefficientField& environment, const ProbeConfig& config);

struct MembershipReport {
  bool passed = true;
  double worst_ratio = 0.0;
  std::size_t nodes = 0;
};

/// Tests mean_{B_1(x)}|grad v|^2 <= K(x) mean_{B_{2r}}|grad v|^2 for every
/// node x of B_r, where outer = B_{2r}(x0). K is given per node.
MembershipReport membership_A(const ScalarField& v, const Ball& outer, const ScalarField& K);

struct MomentReport {
  double Z_R = 0.0;
  double Y_R = 0.0;
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
  double n = 0.0;
  double C_Y = 0.0;
  /// |(Y/C_Y)^{4n(q-p)/((p+2)q)} / Z^{2n/q} - 1|.
  double identity_error = 0.0;
  double censored_fraction = 0.0;
};

/// Z_R = mean over the nodes of B_R of K^{q/2} (censored cells skipped),
/// Y_R = C_Y Z_R^{(p+2)/(2(q-p))}.
MomentReport compute_Y_R(const KField& K, const Grid& grid, const ExponentSet& exps, double C_Y);

/// Same from explicit per-node K values.
MomentReport compute_Y_R(const std::vector<double>& k_values, const ExponentSet& exps, double C_Y);

struct W1pReport {
  /// || |grad u|^2 ||_{L^{m/2}_1(B_{R/2})}, normalized.
  double lhs = 0.0;
  /// || M_1(|grad u|^2) ||_{L^{m/2}(B_{R/2})}, normalized.
  double strong_lhs = 0.0;
  /// M^2 = int_{B_R} |grad u|^2 + || |f|^2 ||_{L^{p/2}_1(B_R)}, normalized.
  double M = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double strong_ratio = 0.0;
  double log_exponent_k = 0.0;
};

/// Inputs are the nodal |grad u|^2, its maximal function M_1 and the nodal |f|^2.
W1pReport verify_w1p(const ScalarField& grad_density, const ScalarField& grad_maximal,
                     const ScalarField& f_density, double Y_R, const ExponentSet& exps,
                     double macro_radius);

/// Convexity threshold ((1-a)/a)^{1/a} of t -> exp(t^a), a in (0,1).
double jensen_threshold(double a);

struct JensenReport {
  double threshold = 0.0;
  /// log of mean exp(max(C, K^{q/2})^{2n/q}).
  double log_mean_exp = 0.0;
  /// (mean max(C, K^{q/2}))^{2n/q}.
  double exp_of_mean_log = 0.0;
  bool passed = false;
};

JensenReport jensen_check(const std::vector<double>& k_values, const ExponentSet& exps);

struct ConcavityReport {
  bool passed = true;
  std::size_t points = 0;
  /// Largest increase of consecutive slopes of log P[K >= k] against k^n,
  /// in units of its standard error.
  double worst_z = 0.0;
  std::vector<double> thresholds;
  std::vector<double> survival;
};

/// Checks that log P[K >= k] is concave or linear in k^n within z_tol standard
/// errors. Thresholds are evenly spaced in k^n, moved up to the next observed
/// value, start above the minimum (the clamp floor) and stop at the level with
/// min_exceedances samples at or above it.
ConcavityReport k_tail_concavity(const std::vector<double>& k_values, double n,
                                 std::size_t bins = 12, std::size_t min_exceedances = 30,
                                 double z_tol = 3.0);

/// Same check with values grouped by trial. Values within a trial are
/// correlated, so the standard error comes from a delete-one-trial jackknife.
ConcavityReport k_tail_concavity(const std::vector<std::vector<double>>& groups, double n,
                                 std::size_t bins = 12, std::size_t min_exceedances = 30,
                                 double z_tol = 3.0);

void write_kfield_text(std::ostream& out, const KField& field);

}  // namespace czlab
