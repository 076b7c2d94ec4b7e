#include "czlab/regularity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "czlab/errors.hpp"
#include "czlab/mesh.hpp"
#include "czlab/solver.hpp"

namespace czlab {

namespace {

std::vector<double> ladder_radii(double spacing, double upper) {
  std::vector<double> radii;
  for (int j = 0;; ++j) {
    const double r = spacing * std::pow(kDefaultLadderRatio, j);
    if (r > upper * (1.0 + 1e-12)) break;
    radii.push_back(r);
  }
  return radii;
}

/// Nodal |grad u|^2 for the nodes of `region` only; zero elsewhere.
ScalarField local_density(const ScalarField& u, const Ball& region) {
  const Grid& grid = u.grid();
  const Mesh mesh(grid);
  ScalarField out(grid);
  const int squares = mesh.squares_per_axis();
  for (std::size_t k : grid.nodes_in(region)) {
    const int i = grid.column(k);
    const int j = grid.row(k);
    double sum = 0.0;
    int count = 0;
    for (int sj = j - 1; sj <= j; ++sj) {
      for (int si = i - 1; si <= i; ++si) {
        if (si < 0 || sj < 0 || si >= squares || sj >= squares) continue;
        const std::size_t base = 2 * (static_cast<std::size_t>(sj) * squares + si);
        for (std::size_t e = base; e < base + 2; ++e) {
          const auto nodes = mesh.nodes(e);
          if (nodes[0] != k && nodes[1] != k && nodes[2] != k) continue;
          const Vec2 g = mesh.gradient(e, u.values());
          sum += dot(g, g);
          ++count;
        }
      }
    }
    out[k] = count > 0 ? sum / count : 0.0;
  }
  return out;
}

double region_mean(const ScalarField& phi, const Ball& region) {
  const auto nodes = phi.grid().nodes_in(region);
  if (nodes.empty()) throw DomainError("region contains no grid nodes");
  double s = 0.0;
  for (std::size_t k : nodes) s += phi[k];
  return s / static_cast<double>(nodes.size());
}

}  // namespace

LipschitzReport minimal_radius_from_density(const ScalarField& density, const Ball& region,
                                            double C_lip) {
  if (!(C_lip > 0.0)) {
    throw CalibrationError("C_lip must be positive (got " + std::to_string(C_lip) + ")");
  }
  const Grid& grid = density.grid();
  LipschitzReport rep;
  rep.C_lip = C_lip;
  const double m2 = region_mean(density, region);
  rep.M_drive = std::sqrt(m2);
  const std::vector<double> radii = ladder_radii(grid.spacing(), 0.5 * region.radius);
  if (radii.empty()) throw ResolutionError("region too small for the radius ladder");
  std::vector<double> avg(radii.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    avg[j] = disc_average(density, region.center, radii[j]);
  }
  const double bound = C_lip * m2;
  std::size_t first = radii.size();
  double worst = 0.0;
  for (std::size_t j = radii.size(); j-- > 0;) {
    if (avg[j] > bound) break;
    first = j;
    if (m2 > 0.0) worst = std::max(worst, avg[j] / m2);
  }
  if (first == radii.size()) {
    throw CalibrationError("no radius qualifies: ratio " + std::to_string(avg.back() / m2) +
                           " exceeds C_lip = " + std::to_string(C_lip) + " at the largest radius");
  }
  rep.r_star = radii[first];
  rep.worst_ratio = worst;
  rep.X_estimate = rep.r_star / std::log(2.0 + rep.M_drive);
  return rep;
}

LipschitzReport minimal_radius(const ScalarField& u, const Ball& region, double C_lip) {
  LipschitzReport rep = minimal_radius_from_density(local_density(u, region), region, C_lip);
  const auto nodes = u.grid().nodes_in(region);
  std::vector<double> vals;
  vals.reserve(nodes.size());
  for (std::size_t k : nodes) vals.push_back(u[k]);
  auto mid = vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2);
  std::nth_element(vals.begin(), mid, vals.end());
  const double median = *mid;
  double dev = 0.0;
  for (std::size_t k : nodes) dev += std::abs(u[k] - median);
  rep.M_oscillation = std::sqrt(dev / static_cast<double>(nodes.size())) / region.radius;
  return rep;
}

double k_from_x(double X, int dimension) {
  const double l = std::log(2.0 + X);
  return std::pow(X, dimension) * std::pow(l, dimension);
}

std::size_t KField::cell_index(const Point& x) const {
  auto axis = [&](double v) {
    int c = static_cast<int>(std::floor(v)) - cell_origin;
    return std::clamp(c, 0, cells_per_axis - 1);
  };
  return static_cast<std::size_t>(axis(x[1])) * cells_per_axis + axis(x[0]);
}

ScalarField KField::nodal(const Grid& grid, double power) const {
  ScalarField out(grid);
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double v = K[cell_index(grid.node(k))];
    out[k] = power == 1.0 ? v : std::pow(v, power);
  }
  return out;
}

std::vector<double> KField::probed_values() const {
  std::vector<double> out;
  for (std::size_t c = 0; c < K.size(); ++c) {
    if (probed[c] && !censored[c]) out.push_back(K[c]);
  }
  return out;
}

KField build_K_field(const CoefficientField& environment, const ProbeConfig& config) {
  if (config.stride < 1) throw ValidationError("probe stride must be >= 1");
  if (!(config.probe_radius > 0.0)) throw ValidationError("probe radius must be positive");
  const double R = environment.macro_radius();
  const Grid grid(R, config.spacing);
  KField field;
  field.macro_radius = R;
  field.cells_per_axis = environment.cells_per_axis();
  field.cell_origin = environment.cell_origin();
  field.dimension = 2;
  field.C_lip = config.C_lip;
  const std::size_t cells = environment.cell_count();
  field.X.assign(cells, 1.0);
  field.K.assign(cells, k_from_x(1.0));
  field.probed.assign(cells, 0);
  field.censored.assign(cells, 0);

  const std::array<Vec2, 3> slopes{{{1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}}};
  std::vector<ScalarField> affine;
  for (const Vec2& e : slopes) {
    ScalarField a(grid);
    for (std::size_t k = 0; k < grid.node_count(); ++k) a[k] = dot(e, grid.node(k));
    affine.push_back(std::move(a));
  }
  std::vector<ScalarField> reference;
  if (config.mode == ProbeMode::GlobalReference) {
    for (const ScalarField& a : affine) {
      DirichletProblem global{environment, Domain::box(grid), a, std::nullopt, config.tolerance};
      global.relative_tolerance = true;
      global.warm_start = true;
      SolveReport rep = solve(global);
      if (!rep.converged) throw ConvergenceError("global reference solve: " + rep.message);
      reference.push_back(std::move(rep.solution));
    }
  }
  const std::vector<ScalarField>& data = reference.empty() ? affine : reference;

  const int n = field.cells_per_axis;
  for (int j = 0; j < n; j += config.stride) {
    for (int i = 0; i < n; i += config.stride) {
      const Point c{field.cell_origin + i + 0.5, field.cell_origin + j + 0.5};
      const double reach = config.probe_radius;
      if (c[0] - reach < -R || c[0] + reach > R || c[1] - reach < -R || c[1] + reach > R) continue;
      const std::size_t idx = static_cast<std::size_t>(j) * n + i;
      field.probed[idx] = 1;
      ++field.probes;
      const Ball region{c, reach};
      try {
        const Domain domain = Domain::ball(grid, region);
        double worst_x = 0.0;
        for (const ScalarField& bv : data) {
          DirichletProblem local{environment, domain, bv, std::nullopt, config.tolerance};
          local.relative_tolerance = true;
          local.warm_start = true;
          local.residual_mode = ResidualMode::Bound;
          const SolveReport rep = solve(local);
          if (!rep.converged) throw ConvergenceError(rep.message);
          const LipschitzReport lip =
              minimal_radius_from_density(local_density(rep.solution, region), region, config.C_lip);
          worst_x = std::max(worst_x, lip.X_estimate);
        }
        field.X[idx] = std::max(1.0, worst_x);
        field.K[idx] = k_from_x(field.X[idx]);
      } catch (const Error&) {
        field.censored[idx] = 1;
        ++field.censored_probes;
      }
    }
  }

  // nearest uncensored probe fills the remaining cells
  std::vector<std::size_t> sources;
  for (std::size_t c = 0; c < cells; ++c) {
    if (field.probed[c] && !field.censored[c]) sources.push_back(c);
  }
  if (sources.empty()) throw CalibrationError("every K probe was censored or no cell fits a probe");
  for (std::size_t c = 0; c < cells; ++c) {
    if (field.probed[c] && !field.censored[c]) continue;
    const int ci = static_cast<int>(c % n);
    const int cj = static_cast<int>(c / n);
    std::size_t best = sources.front();
    long best_d = std::numeric_limits<long>::max();
    for (std::size_t s : sources) {
      const long di = static_cast<long>(s % n) - ci;
      const long dj = static_cast<long>(s / n) - cj;
      const long d = di * di + dj * dj;
      if (d < best_d) {
        best_d = d;
        best = s;
      }
    }
    field.X[c] = field.X[best];
    field.K[c] = field.K[best];
  }
  return field;
}

MembershipReport membership_A(const ScalarField& v, const Ball& outer, const ScalarField& K) {
  MembershipReport rep;
  const ScalarField density = local_density(v, outer);
  const double global = region_mean(density, outer);
  const Ball inner{outer.center, 0.5 * outer.radius};
  for (std::size_t k : v.grid().nodes_in(inner)) {
    ++rep.nodes;
    if (global == 0.0) continue;
    const double local = disc_average(density, v.grid().node(k), 1.0);
    rep.worst_ratio = std::max(rep.worst_ratio, local / (K[k] * global));
  }
  rep.passed = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

MomentReport compute_Y_R(const std::vector<double>& k_values, const ExponentSet& exps, double C_Y) {
  if (!(exps.q > exps.p)) throw ValidationError("compute_Y_R requires q > p");
  if (!(C_Y > 0.0)) throw ValidationError("C_Y must be positive");
  if (k_values.empty()) throw DomainError("no K values");
  MomentReport rep;
  rep.p = exps.p;
  rep.q = exps.q;
  rep.s = exps.s_integrability;
  rep.n = exps.n_moment;
  rep.C_Y = C_Y;
  double z = 0.0;
  for (double k : k_values) z += std::pow(k, exps.q / 2.0);
  rep.Z_R = z / static_cast<double>(k_values.size());
  const double power = (exps.p + 2.0) / (2.0 * (exps.q - exps.p));
  rep.Y_R = C_Y * std::pow(rep.Z_R, power);
  const double lhs = std::pow(rep.Y_R / C_Y,
                              4.0 * rep.n * (exps.q - exps.p) / ((exps.p + 2.0) * exps.q));
  const double rhs = std::pow(rep.Z_R, 2.0 * rep.n / exps.q);
  rep.identity_error = std::abs(lhs / rhs - 1.0);
  return rep;
}

MomentReport compute_Y_R(const KField& K, const Grid& grid, const ExponentSet& exps, double C_Y) {
  std::vector<double> values;
  for (std::size_t k : grid.nodes_in(Ball{{0.0, 0.0}, K.macro_radius})) {
    const std::size_t c = K.cell_index(grid.node(k));
    if (K.censored[c]) continue;
    values.push_back(K.K[c]);
  }
  MomentReport rep = compute_Y_R(values, exps, C_Y);
  rep.censored_fraction = K.censored_fraction();
  return rep;
}

W1pReport verify_w1p(const ScalarField& grad_density, const ScalarField& grad_maximal,
                     const ScalarField& f_density, double Y_R, const ExponentSet& exps,
                     double macro_radius) {
  const Grid& grid = grad_density.grid();
  const Ball inner{{0.0, 0.0}, 0.5 * macro_radius};
  const Ball outer{{0.0, 0.0}, macro_radius};
  W1pReport rep;
  rep.log_exponent_k = exps.log_exponent_k;
  rep.lhs = coarsened_norm(grad_density, {exps.m_norm / 2.0, 1.0, inner, true});
  rep.strong_lhs = coarsened_norm(grad_maximal, {exps.m_norm / 2.0, 0.0, inner, true});
  double integral = 0.0;
  for (std::size_t k : grid.nodes_in(outer)) integral += grad_density[k];
  integral *= grid.node_measure();
  const double f_norm = coarsened_norm(f_density, {exps.p / 2.0, 1.0, outer, true});
  rep.M = std::sqrt(integral + f_norm);
  rep.rhs = Y_R * Y_R * rep.M * rep.M * std::pow(std::log(2.0 + rep.M), exps.log_exponent_k);
  auto ratio = [&](double lhs) {
    if (lhs == 0.0) return 0.0;
    return rep.rhs > 0.0 ? lhs / rep.rhs : std::numeric_limits<double>::infinity();
  };
  rep.ratio = ratio(rep.lhs);
  rep.strong_ratio = ratio(rep.strong_lhs);
  return rep;
}

double jensen_threshold(double a) {
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("Jensen exponent must lie in (0, 1)");
  return std::exp(std::log((1.0 - a) / a) / a);
}

JensenReport jensen_check(const std::vector<double>& k_values, const ExponentSet& exps) {
  if (k_values.empty()) throw DomainError("no K values");
  const double a = 2.0 * exps.n_moment / exps.q;
  JensenReport rep;
  rep.threshold = jensen_threshold(a);
  std::vector<double> v;
  v.reserve(k_values.size());
  for (double k : k_values) v.push_back(std::max(rep.threshold, std::pow(k, exps.q / 2.0)));
  double top = -std::numeric_limits<double>::infinity();
  for (double x : v) top = std::max(top, std::pow(x, a));
  double acc = 0.0;
  for (double x : v) acc += std::exp(std::pow(x, a) - top);
  rep.log_mean_exp = top + std::log(acc / static_cast<double>(v.size()));
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  rep.exp_of_mean_log = std::pow(mean, a);
  rep.passed = rep.log_mean_exp >= rep.exp_of_mean_log * (1.0 - 1e-12);
  return rep;
}

namespace {

struct TailGrid {
  std::vector<double> xs, ks;
};

// Probe values come off a discrete radius ladder, so the pooled law can be
// close to a lattice law: tight clusters separated by gaps. On a flat stretch
// between atoms the survival carries no shape information, and inside an atom
// it only resolves the atom's width, so neither is read. Working in x = k^n
// with grid step h, sorted values split into runs at gaps wider than h/4. A
// grid point in a gap moves up to the next run; one inside a run narrower than
// h/2 moves down to the run's start; one inside a wider run moves up to the
// next observed value. The run at the minimum (the clamp floor of K) is left
// out and the grid ends at the value with min_exceedances samples at or above.
TailGrid tail_grid(std::vector<double> sorted, double n, std::size_t bins, std::size_t min_exceedances) {
  if (!(n > 0.0)) throw ValidationError("moment exponent n must be positive");
  if (bins < 2) throw ValidationError("need at least 2 bins");
  TailGrid g;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t N = sorted.size();
  const auto first = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), sorted.front()) -
                                              sorted.begin());
  if (min_exceedances == 0 || N < first + min_exceedances) return g;
  std::vector<double> x(sorted.begin() + static_cast<std::ptrdiff_t>(first), sorted.end());
  for (double& v : x) v = std::pow(v, n);
  const std::size_t M = x.size();
  const double x_lo = x.front();
  const double x_hi = x[M - min_exceedances];
  if (!(x_hi > x_lo)) return g;
  const double h = (x_hi - x_lo) / static_cast<double>(bins);

  // run_start[i], run_end[i]: first and last index of the run holding i
  std::vector<std::size_t> run_start(M), run_end(M);
  for (std::size_t i = 0; i < M; ++i) run_start[i] = (i > 0 && x[i] - x[i - 1] <= 0.25 * h) ? run_start[i - 1] : i;
  for (std::size_t i = M; i-- > 0;) run_end[i] = (i + 1 < M && x[i + 1] - x[i] <= 0.25 * h) ? run_end[i + 1] : i;

  for (std::size_t j = 0; j <= bins; ++j) {
    const double t = x_lo + h * static_cast<double>(j);
    auto idx = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), t * (1.0 - 1e-12)) - x.begin());
    if (idx == M) break;
    const bool inside = idx > 0 && run_start[idx] == run_start[idx - 1];
    if (inside && x[run_end[idx]] - x[run_start[idx]] < 0.5 * h) idx = run_start[idx];
    if (M - idx < min_exceedances && j > 0) break;
    const double k = sorted[first + idx];
    if (!g.ks.empty() && k <= g.ks.back()) continue;
    g.ks.push_back(k);
    g.xs.push_back(x[idx]);
  }
  return g;
}

double second_slope_difference(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t j) {
  return (ys[j + 2] - ys[j + 1]) / (xs[j + 2] - xs[j + 1]) - (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
}

std::size_t count_at_least(const std::vector<double>& values, double k) {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [k](double v) { return v >= k; }));
}

}  // namespace

ConcavityReport k_tail_concavity(const std::vector<double>& k_values, double n, std::size_t bins,
                                 std::size_t min_exceedances, double z_tol) {
  ConcavityReport rep;
  const TailGrid g = tail_grid(k_values, n, bins, min_exceedances);
  const double N = static_cast<double>(k_values.size());
  std::vector<double> ys, vars;
  for (double k : g.ks) {
    const double S = static_cast<double>(count_at_least(k_values, k)) / N;
    rep.thresholds.push_back(k);
    rep.survival.push_back(S);
    ys.push_back(std::log(S));
    vars.push_back((1.0 - S) / (N * S));
  }
  rep.points = g.xs.size();
  for (std::size_t j = 0; j + 2 < g.xs.size(); ++j) {
    const double d1 = g.xs[j + 1] - g.xs[j];
    const double d2 = g.xs[j + 2] - g.xs[j + 1];
    const double diff = second_slope_difference(g.xs, ys, j);
    const double c0 = 1.0 / d1;
    const double c1 = 1.0 / d1 + 1.0 / d2;
    const double c2 = 1.0 / d2;
    const double sd = std::sqrt(c0 * c0 * vars[j] + c1 * c1 * vars[j + 1] + c2 * c2 * vars[j + 2]);
    const double z = sd > 0.0 ? diff / sd : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.worst_z = std::max(rep.worst_z, z);
  }
  rep.passed = rep.worst_z <= z_tol;
  return rep;
}

ConcavityReport k_tail_concavity(const std::vector<std::vector<double>>& groups, double n, std::size_t bins,
                                 std::size_t min_exceedances, double z_tol) {
  ConcavityReport rep;
  std::vector<double> pooled;
  for (const auto& grp : groups) pooled.insert(pooled.end(), grp.begin(), grp.end());
  const TailGrid grid = tail_grid(pooled, n, bins, min_exceedances);
  const std::size_t G = groups.size();
  const double N = static_cast<double>(pooled.size());

  // counts[g][j]: values of group g at or above threshold j
  std::vector<std::vector<double>> counts(G, std::vector<double>(grid.ks.size()));
  std::vector<double> total(grid.ks.size(), 0.0);
  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t j = 0; j < grid.ks.size(); ++j) {
      counts[g][j] = static_cast<double>(count_at_least(groups[g], grid.ks[j]));
      total[j] += counts[g][j];
    }
  // keep thresholds that survive deleting any single group
  std::vector<double> xs, ys;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < grid.ks.size(); ++j) {
    double worst_drop = 0.0;
    for (std::size_t g = 0; g < G; ++g) worst_drop = std::max(worst_drop, counts[g][j]);
    if (total[j] - worst_drop < 1.0) continue;
    keep.push_back(j);
    xs.push_back(grid.xs[j]);
    ys.push_back(std::log(total[j] / N));
    rep.thresholds.push_back(grid.ks[j]);
    rep.survival.push_back(total[j] / N);
  }
  rep.points = xs.size();
  if (G < 2) return rep;

  std::vector<std::vector<double>> loo(G, std::vector<double>(keep.size()));
  for (std::size_t g = 0; g < G; ++g) {
    const double rest = N - static_cast<double>(groups[g].size());
    for (std::size_t i = 0; i < keep.size(); ++i) loo[g][i] = std::log((total[keep[i]] - counts[g][keep[i]]) / rest);
  }
  for (std::size_t j = 0; j + 2 < xs.size(); ++j) {
    const double diff = second_slope_difference(xs, ys, j);
    std::vector<double> d(G);
    double mean = 0.0;
    for (std::size_t g = 0; g < G; ++g) {
      d[g] = second_slope_difference(xs, loo[g], j);
      mean += d[g] / static_cast<double>(G);
    }
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss * static_cast<double>(G - 1) / static_cast<double>(G));
    const double z = sd > 0.0 ? diff / sd : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.worst_z = std::max(rep.worst_z, z);
  }
  rep.passed = rep.worst_z <= z_tol;
  return rep;
}

void write_kfield_text(std::ostream& out, const KField& field) {
  const auto precision = out.precision();
  out.precision(17);
  out << "czlab-kfield 1\n";
  out << "macro_radius " << field.macro_radius << "\n";
  out << "cells_per_axis " << field.cells_per_axis << "\n";
  out << "cell_origin " << field.cell_origin << "\n";
  out << "C_lip " << field.C_lip << "\n";
  out << "probes " << field.probes << "\n";
  out << "censored " << field.censored_probes << "\n";
  out << "values\n";
  for (std::size_t c = 0; c < field.K.size(); ++c) {
    out << field.X[c] << ' ' << field.K[c] << ' ' << int(field.probed[c]) << ' '
        << int(field.censored[c]) << '\n';
  }
  out.precision(precision);
}

}  // namespace czlab
