// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "czlab/config.hpp"
#include "czlab/covering.hpp"
#include "czlab/exponents.hpp"
#include "czlab/flux.hpp"
#include "czlab/lattice.hpp"
#include "czlab/mesh.hpp"
#include "czlab/report.hpp"
#include "czlab/rng.hpp"
#include "czlab/solver.hpp"
#include "czlab/trial.hpp"

using namespace czlab;
namespace fs = std::filesystem;

namespace {

// Tolerances and frozen constants.
constexpr double kOracleTol = 1e-8;
constexpr double kAffineTol = 1e-8;
constexpr double kContractionSlack = 0.05;
constexpr double kTailSlack = 0.15;
constexpr double kCzDrift = 0.10;
constexpr double kW1pPassFraction = 0.95;
constexpr double kMomentFactor = 2.0;
// Maximal-function regression bounds: twice the largest value measured on
// the calibration fields (seeds 1000-1099 of random_phi); evaluation uses
// seeds 0-99.
constexpr double kCw = 1.37;
constexpr double kCs3 = 2.09;
constexpr double kCs4 = 2.02;
constexpr double kCi = 5.07;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 ------------------------------------------------------------------------

Outcome exponent_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  const ExactExponents e = derive_exponents_exact(4, 8);
  bool ok = e.theta == Rational(3, 4) && e.nu == Rational(1, 2) && e.m_schedule == Rational(8) &&
            e.schedule_identity() && e.tail_identity();
  Rng rng(20240101);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const long pd = 1 + static_cast<long>(rng.index(12));
    const Rational p = Rational(2) + Rational(1 + static_cast<long>(rng.index(40)), pd);
    const Rational q = p + Rational(1 + static_cast<long>(rng.index(40)), 1 + static_cast<long>(rng.index(12)));
    const ExactExponents x = derive_exponents_exact(p, q);
    const Rational theta = (p * p + 2 * p) / (p * p + 2 * q);
    ok = ok && x.theta == theta && x.schedule_identity() && x.tail_identity();
    ++checked;
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 1.0;
  return {ok, fmt("theta(4,8)=3/4 nu=1/2 m=8, identities exact on %d random (p,q), %.3f s", checked, secs)};
}

// 2 ------------------------------------------------------------------------

CoefficientField small_checkerboard(double R, std::uint64_t seed) {
  FluxParams params;
  params.lambda_ellipticity = 4.0;
  const int cells = static_cast<int>(2 * R);
  std::vector<double> lam(static_cast<std::size_t>(cells) * cells);
  Rng rng(seed);
  for (double& l : lam) l = rng.uniform(0.25, 4.0);
  return CoefficientField(params, R, seed, lam, std::vector<double>(lam.size(), 0.0));
}

/// Independent dense P1 assembly and direct solve.
std::vector<double> dense_oracle(const CoefficientField& field, const Grid& grid, const VectorField& f,
                                 const ScalarField& g) {
  const int n = grid.nodes_per_axis();
  const double h = grid.spacing();
  std::vector<int> index(grid.node_count(), -1);
  int free = 0;
  for (int j = 1; j < n - 1; ++j)
    for (int i = 1; i < n - 1; ++i) index[grid.index(i, j)] = free++;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(free, free);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(free);
  auto element = [&](std::array<std::size_t, 3> v, std::size_t e) {
    Point x[3];
    for (int a = 0; a < 3; ++a) x[a] = grid.node(v[a]);
    const double det = (x[1][0] - x[0][0]) * (x[2][1] - x[0][1]) - (x[2][0] - x[0][0]) * (x[1][1] - x[0][1]);
    const double area = 0.5 * std::abs(det);
    Vec2 grad[3];
    for (int a = 0; a < 3; ++a) {
      const Point& p1 = x[(a + 1) % 3];
      const Point& p2 = x[(a + 2) % 3];
      grad[a] = {(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det};
    }
    const Point c{(x[0][0] + x[1][0] + x[2][0]) / 3.0, (x[0][1] + x[1][1] + x[2][1]) / 3.0};
    const double lam = field.lambda(field.cell_of(c));
    for (int a = 0; a < 3; ++a) {
      const int ia = index[v[a]];
      if (ia < 0) continue;
      b(ia) += area * dot(f[e], grad[a]);
      for (int c2 = 0; c2 < 3; ++c2) {
        const double k = area * lam * dot(grad[a], grad[c2]);
        const int ic = index[v[c2]];
        if (ic >= 0) K(ia, ic) += k;
        else b(ia) -= k * g[v[c2]];
      }
    }
  };
  const int sq = n - 1;
  for (int j = 0; j < sq; ++j) {
    for (int i = 0; i < sq; ++i) {
      const std::size_t A = grid.index(i, j), B = grid.index(i + 1, j), C = grid.index(i + 1, j + 1),
                        D = grid.index(i, j + 1);
      const std::size_t e0 = 2 * (static_cast<std::size_t>(j) * sq + i);
      element({A, B, C}, e0);
      element({A, C, D}, e0 + 1);
    }
  }
  const Eigen::VectorXd u = K.ldlt().solve(b);
  std::vector<double> out(g.values().begin(), g.values().end());
  for (std::size_t k = 0; k < out.size(); ++k)
    if (index[k] >= 0) out[k] = u(index[k]);
  (void)h;
  return out;
}

Outcome solver_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const double R = 4.0;
  const Grid grid(R, 0.5);
  const Mesh mesh(grid);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CoefficientField field = small_checkerboard(R, seed);
    Rng rng(mix_seed(seed, 11));
    VectorField f(grid);
    for (std::size_t e = 0; e < f.size(); ++e) f[e] = {rng.normal(), rng.normal()};
    ScalarField g(grid);
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
      const Point x = grid.node(k);
      g[k] = 0.3 * x[0] - 0.2 * x[1] + std::sin(x[0] * x[1]);
    }
    DirichletProblem prob{field, Domain::box(grid), g, f, 1e-13};
    prob.relative_tolerance = true;
    const SolveReport rep = solve(prob);
    const std::vector<double> ref = dense_oracle(field, grid, f, g);
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
      const Vec2 gu = mesh.gradient(e, rep.solution.values());
      const Vec2 gr = mesh.gradient(e, ref);
      num += (gu[0] - gr[0]) * (gu[0] - gr[0]) + (gu[1] - gr[1]) * (gu[1] - gr[1]);
      den += dot(gr, gr);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  FluxParams unit;
  unit.lambda_ellipticity = 1.0;
  const CoefficientField constant = CoefficientField::constant(unit, R, 1.0);
  ScalarField affine(grid);
  for (std::size_t k = 0; k < grid.node_count(); ++k) affine[k] = 1.5 + grid.node(k)[0] - 0.7 * grid.node(k)[1];
  DirichletProblem ap{constant, Domain::box(grid), affine, std::nullopt, 1e-13};
  ap.relative_tolerance = true;
  const SolveReport arep = solve(ap);
  double aff = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    aff = std::max(aff, std::abs(arep.solution[k] - affine[k]));
    scale = std::max(scale, std::abs(affine[k]));
  }
  aff /= scale;
  const double secs = seconds_since(t0);
  const bool ok = worst <= kOracleTol && aff <= kAffineTol && secs < 10.0;
  return {ok, fmt("relative H1 error vs dense solve %.2e (tol %.0e), affine error %.2e, %.2f s", worst, kOracleTol,
                  aff, secs)};
}

// 3 ------------------------------------------------------------------------

Outcome monotone_contraction() {
  const double Lambda = 2.0;
  const double bound = std::sqrt(1.0 - std::pow(Lambda, -4.0));
  double worst = 0.0;
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FluxParams params;
    params.lambda_ellipticity = Lambda;
    params.family = FluxFamily::BoundedMonotonePerturbation;
    params.perturbation_weight = 0.5;
    const double R = 10.0;
    const CoefficientField field = sample_environment(1000 + seed, R, params);
    const Grid grid(R, 0.5);
    Rng rng(mix_seed(seed, 13));
    VectorField f(grid);
    for (std::size_t e = 0; e < f.size(); ++e) f[e] = {3.0 * rng.normal(), 3.0 * rng.normal()};
    DirichletProblem prob{field, Domain::box(grid), ScalarField(grid), f, 1e-9};
    prob.relative_tolerance = true;
    prob.residual_mode = ResidualMode::Bound;
    const SolveReport rep = solve(prob);
    if (rep.converged) ++converged;
    const auto& tr = rep.energy_trace;
    if (tr.size() < 12) continue;
    const std::size_t last = tr.size() - 1;
    const double ratio = std::pow(tr[last] / tr[last - 10], 0.1);
    worst = std::max(worst, ratio);
  }
  const bool ok = converged == 20 && worst <= bound + kContractionSlack;
  return {ok, fmt("worst asymptotic ratio %.4f vs sqrt(1-Lambda^-4)+%.2f = %.4f, %d/20 converged", worst,
                  kContractionSlack, bound + kContractionSlack, converged)};
}

// 4 ------------------------------------------------------------------------

ScalarField random_phi(const Grid& g, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 7));
  ScalarField phi(g);
  const double R = g.macro_radius();
  switch (seed % 3) {
    case 0:
      for (std::size_t k = 0; k < g.node_count(); ++k) {
        const double v = rng.uniform();
        const double boost = rng.uniform() < 0.02 ? 50.0 : 1.0;
        phi[k] = std::pow(v, 6) * boost;
      }
      break;
    case 1:
      for (int b = 0; b < 5; ++b) {
        const Point c{rng.uniform(-R, R), rng.uniform(-R, R)};
        const double w = rng.uniform(0.5, 4), a = rng.uniform(0, 10);
        for (std::size_t k = 0; k < g.node_count(); ++k) {
          const Point x = g.node(k);
          const double d2 = (x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1]);
          phi[k] += a * std::exp(-d2 / (2 * w * w));
        }
      }
      break;
    default:
      for (int b = 0; b < 8; ++b) {
        const Ball d{{rng.uniform(-R, R), rng.uniform(-R, R)}, rng.uniform(0.5, 3)};
        for (std::size_t k : g.nodes_in(d)) phi[k] = 1.0;
      }
  }
  return phi.masked(Ball{{0, 0}, R});
}

/// Largest disc average over every radius in [max(h, delta), r_max], by direct
/// enumeration of the distinct lattice discs.
double brute_sup(const ScalarField& phi, std::size_t node, double h, double r_max) {
  const Grid& g = phi.grid();
  const double d = g.spacing();
  const double r0 = std::max(h, d);
  const int reach = static_cast<int>(std::ceil(r_max / d));
  std::vector<long> norms{static_cast<long>(std::floor(r0 * r0 / (d * d) * (1 + 1e-12)))};
  for (int dj = 0; dj <= reach; ++dj)
    for (int di = 0; di <= reach; ++di) {
      const long n2 = static_cast<long>(di) * di + static_cast<long>(dj) * dj;
      if (n2 * d * d > r0 * r0 * (1 + 1e-12) && n2 * d * d <= r_max * r_max * (1 + 1e-12)) norms.push_back(n2);
    }
  std::sort(norms.begin(), norms.end());
  norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
  double best = 0.0;
  for (long n2 : norms) {
    double s = 0.0;
    std::size_t count = 0;
    for (int dj = -reach; dj <= reach; ++dj)
      for (int di = -reach; di <= reach; ++di) {
        if (static_cast<long>(di) * di + static_cast<long>(dj) * dj > n2) continue;
        ++count;
        const int i = g.column(node) + di, j = g.row(node) + dj;
        if (i < 0 || j < 0 || i >= g.nodes_per_axis() || j >= g.nodes_per_axis()) continue;
        s += std::abs(phi.at(i, j));
      }
    best = std::max(best, s / static_cast<double>(count));
  }
  return best;
}

Outcome maximal_inequalities() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(16, 0.25);
  const Ball B{{0, 0}, 16};
  const double cell = g.node_measure();
  const auto nodes = g.nodes_in(B);
  double cw = 0, cs3 = 0, cs4 = 0, ci = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ScalarField phi = random_phi(g, s);
    const ScalarField M1 = maximal_fn(phi, 1.0);
    const ScalarField M0 = maximal_fn(phi, 0.0);
    const double l1 = coarsened_norm(phi, {1, 1, B, false});
    std::vector<double> mv;
    for (auto k : nodes) mv.push_back(M1[k]);
    std::sort(mv.begin(), mv.end());
    for (double qq : {0.5, 0.9, 0.99, 0.999}) {
      const double t = mv[static_cast<std::size_t>(qq * (mv.size() - 1))];
      std::size_t c = 0;
      for (auto k : nodes) c += M1[k] > t;
      cw = std::max(cw, t * c * cell / l1);
    }
    ScalarField sq(g);
    for (std::size_t k = 0; k < g.node_count(); ++k) sq[k] = phi[k] * phi[k];
    for (double p : {3.0, 4.0}) {
      double lhs = 0;
      for (auto k : nodes) lhs += std::pow(M1[k], p) * cell;
      const double rhs = std::pow(coarsened_norm(sq, {p / 2, 1, B, false}), p / 2);
      double& slot = p == 3.0 ? cs3 : cs4;
      slot = std::max(slot, lhs / rhs);
    }
    double inf = 1e300;
    for (auto k : g.nodes_in(Ball{{0, 0}, 2})) inf = std::min(inf, M0[k]);
    ci = std::max(ci, inf / coarsened_norm(phi, {1, 0, B, true}));
  }
  // ladder sandwich, every node, h in {0, 1}
  const Grid small(8, 0.5);
  bool sandwich = true;
  const double rho2 = kDefaultLadderRatio * kDefaultLadderRatio;
  for (double h : {0.0, 1.0}) {
    const ScalarField phi = random_phi(small, 3 + static_cast<std::uint64_t>(h));
    const ScalarField M = maximal_fn(phi, h);
    const double r_max = maximal_ladder(small, h, kDefaultLadderRatio).back();
    for (std::size_t k = 0; k < small.node_count(); ++k) {
      const double b = brute_sup(phi, k, h, r_max);
      if (M[k] > b * (1 + 1e-12) || b > rho2 * M[k] * (1 + 1e-12)) sandwich = false;
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = cw <= kCw && cs3 <= kCs3 && cs4 <= kCs4 && ci <= kCi && sandwich && secs < 120.0;
  return {ok, fmt("weak %.3f<=%.2f strong(3) %.3f<=%.2f strong(4) %.3f<=%.2f inf %.3f<=%.2f sandwich %s, %.1f s", cw,
                  kCw, cs3, kCs3, cs4, kCs4, ci, kCi, sandwich ? "ok" : "broken", secs)};
}

// 5 ------------------------------------------------------------------------

Outcome vitali_properties() {
  Rng rng(777);
  std::size_t failures = 0;
  double worst = 0.0;
  for (int family = 0; family < 1000; ++family) {
    const std::size_t n = 1 + rng.index(80);
    std::vector<Ball> balls;
    for (std::size_t i = 0; i < n; ++i) {
      balls.push_back({{rng.uniform(-10, 10), rng.uniform(-10, 10)}, rng.uniform(0.1, 3.0)});
    }
    const auto kept = vitali_select(balls);
    bool ok = !kept.empty();
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b) {
        const Ball& x = balls[kept[a]];
        const Ball& y = balls[kept[b]];
        if (distance(x.center, y.center) <= x.radius + y.radius) ok = false;
      }
    for (const Ball& in : balls) {
      bool covered = false;
      for (std::size_t k : kept) {
        const Ball& c = balls[k];
        const double need = distance(in.center, c.center) + in.radius;
        if (need <= 5.0 * c.radius * (1 + 1e-12)) {
          covered = true;
          worst = std::max(worst, need / c.radius);
          break;
        }
      }
      ok = ok && covered;
    }
    const VitaliCheck lib = verify_vitali(balls, kept);
    ok = ok && lib.disjoint && lib.covered;
    if (!ok) ++failures;
  }
  return {failures == 0, fmt("1000 families, %zu failures, largest dilation used %.3f", failures, worst)};
}

// 6, 7, 9, 10 -----------------------------------------------------------------

std::string ensemble_dir() {
  const char* env = std::getenv("CZLAB_ACCEPT_OUT");
  return env != nullptr ? env : "acceptance-report";
}

Outcome good_lambda(const EnsembleResult& r, double secs) {
  const EnsembleSummary& s = r.summary;
  std::size_t usable = 0;
  for (const auto& rec : r.records) usable += rec.usable();
  const bool ok = s.failed == 0 && s.level_errors == 0 && s.violations == 0 && s.c_meas_exceed == 0 &&
                  std::isfinite(r.config.C_good) && usable > 0 && secs < 1800.0;
  return {ok, fmt("%zu/%zu usable trials, %zu levels (%zu errors), %zu balls, alt-1 violations %zu (simple form %zu), "
                  "max C_meas %.4g, frozen C_good %.4g, levels above bound %zu, %.0f s",
                  usable, s.trials, s.levels, s.level_errors, s.balls, s.violations, s.simple_violations, s.max_c_meas,
                  r.config.C_good, s.c_meas_exceed, secs)};
}

Outcome tail_exponent(const EnsembleResult& r) {
  const EnsembleSummary& s = r.summary;
  const double limit = s.tails.predicted_slope + kTailSlack;
  if (!s.fit) {
    std::string pts;
    for (const auto& p : s.tails.points) pts += fmt(" %.3g:%.3g", p.T_over_tstar, p.pooled_fraction);
    return {false, "no fit (" + s.fit_error + "); pooled tail" + pts};
  }
  return {s.fit->slope <= limit, fmt("slope %.4f +- %.4f over [%g, %g] vs limit %.3f (predicted %.3f)", s.fit->slope,
                                     s.fit->stderr_slope, s.fit->window_lo, s.fit->window_hi, limit,
                                     s.tails.predicted_slope)};
}

Outcome w1p(const EnsembleResult& r) {
  const EnsembleSummary& s = r.summary;
  std::string failures;
  for (const auto& rec : r.records) {
    if (!rec.usable()) continue;
    if (rec.w1p_ratio > 1.0) {
      std::fprintf(stderr, "w1p failure seed %llu: lhs %.6g rhs %.6g M %.6g Y_R %.6g ratio %.6g\n",
                   static_cast<unsigned long long>(rec.seed), rec.w1p_lhs, rec.w1p_rhs, rec.M, rec.Y_R,
                   rec.w1p_ratio);
      failures += fmt(" %llu", static_cast<unsigned long long>(rec.seed));
    }
  }
  const bool ok = s.w1p_pass_fraction >= kW1pPassFraction && s.strong_form_failures == 0;
  return {ok, fmt("pass fraction %.3f (need %.2f), max ratio %.3g, frozen C_Y %.4g, strong-form failures %zu",
                  s.w1p_pass_fraction, kW1pPassFraction, s.max_w1p_ratio, r.config.C_Y, s.strong_form_failures) +
                  (failures.empty() ? "" : ", failing seeds" + failures)};
}

Outcome moments(const EnsembleResult& r) {
  const EnsembleSummary& s = r.summary;
  const auto& curve = s.exp_moment_curve;
  if (curve.size() < 100) {
    return {false, fmt("only %zu usable trials for the 50/100 comparison", curve.size())};
  }
  const double m50 = curve[49], m100 = curve[99];
  const double factor = std::max(m50 / m100, m100 / m50);
  const bool ok = factor < kMomentFactor && s.concavity.passed && s.concavity.points >= 3;
  return {ok, fmt("mean exp(Y_R^s) %.6g at 50, %.6g at 100 (factor %.4f < %.1f); K-tail concavity %s, %zu points, "
                  "worst z %.3f",
                  m50, m100, factor, kMomentFactor, s.concavity.passed ? "passes" : "fails", s.concavity.points,
                  s.concavity.worst_z)};
}

// 8 ------------------------------------------------------------------------

Outcome cz_sanity() {
  std::vector<double> ratios;
  std::string detail;
  for (double R : {16.0, 32.0, 64.0}) {
    ExperimentConfig c;
    c.macro_radius = R;
    c.f_pattern = FPattern::Smooth;
    const Grid grid(R, 0.25);
    FluxParams unit;
    unit.lambda_ellipticity = 1.0;
    const CoefficientField field = CoefficientField::constant(unit, R, 1.0);
    const VectorField f = make_rhs(c, grid, 0);
    DirichletProblem prob{field, Domain::box(grid), ScalarField(grid), f, 1e-10};
    prob.relative_tolerance = true;
    prob.residual_mode = ResidualMode::Bound;
    const SolveReport rep = solve(prob);
    const ScalarField d = energy_density(rep.solution);
    const ScalarField fs = f.squared_density();
    const Ball inner{{0, 0}, R / 2}, outer{{0, 0}, R};
    const double num = std::sqrt(coarsened_norm(d, {2, 0, inner, true}));
    const double den = std::sqrt(coarsened_norm(d, {1, 0, outer, true})) + std::sqrt(coarsened_norm(fs, {2, 0, outer, true}));
    ratios.push_back(num / den);
    detail += fmt(" R=%g:%.5f", R, num / den);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double drift = hi / lo - 1.0;
  return {drift < kCzDrift, fmt("ratios%s, drift %.4f (limit %.2f)", detail.c_str(), drift, kCzDrift)};
}

// 11 -----------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> read_dir(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    out.emplace_back(e.path().filename().string(), buf.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  ExperimentConfig c;
  c.ensemble_size = 4;
  c.calibration_size = 2;
  const fs::path base = fs::path(ensemble_dir()) / "determinism";
  fs::remove_all(base);
  emit_report(run_ensemble(c, 1), (base / "a").string());
  emit_report(run_ensemble(c, 2), (base / "b").string());
  const auto a = read_dir(base / "a");
  const auto b = read_dir(base / "b");
  std::size_t differing = 0;
  if (a.size() != b.size()) differing = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) ++differing;
  }
  return {differing == 0 && !a.empty(),
          fmt("reduced ensemble (2 calibration + 4 evaluation seeds) run with 1 and 2 workers: %zu files, %zu differ",
              a.size(), differing)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("criterion %2d %s %s: %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  };
  auto guarded = [&](int id, const char* name, const std::function<Outcome()>& run) {
    try {
      report(id, name, run());
    } catch (const std::exception& e) {
      report(id, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "exponent algebra", exponent_algebra);
  guarded(2, "solver oracle equivalence", solver_oracle);
  guarded(3, "monotone contraction", monotone_contraction);
  guarded(4, "maximal-function inequalities", maximal_inequalities);
  guarded(5, "Vitali properties", vitali_properties);

  std::optional<EnsembleResult> ens;
  double ens_secs = 0.0;
  std::string ens_error;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    ens = run_ensemble(ExperimentConfig{});
    ens_secs = seconds_since(t0);
    emit_report(*ens, ensemble_dir());
  } catch (const std::exception& e) {
    ens_error = e.what();
  }
  auto from_ensemble = [&](int id, const char* name, auto fn) {
    if (!ens) {
      report(id, name, {false, "ensemble failed: " + ens_error});
      return;
    }
    guarded(id, name, [&] { return fn(*ens); });
  };
  from_ensemble(6, "good-lambda inequality", [&](const EnsembleResult& r) { return good_lambda(r, ens_secs); });
  from_ensemble(7, "tail exponent", tail_exponent);
  guarded(8, "constant-coefficient CZ sanity", cz_sanity);
  from_ensemble(9, "W1p verification", w1p);
  from_ensemble(10, "moment stability", moments);
  guarded(11, "determinism", determinism);

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
