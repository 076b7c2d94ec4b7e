#include "czlab/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "czlab/errors.hpp"
#include "czlab/sparse.hpp"

namespace czlab {

Domain::Domain(const Grid& grid)
    : grid_(grid),
      role_(grid.node_count(), NodeRole::Outside),
      free_index_(grid.node_count(), -1) {}

void Domain::finish(const Mesh& mesh, int i0, int i1, int j0, int j1) {
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const std::size_t k = grid_.index(i, j);
      if (role_[k] == NodeRole::Free) {
        free_index_[k] = static_cast<std::ptrdiff_t>(free_.size());
        free_.push_back(k);
      } else if (role_[k] == NodeRole::Boundary) {
        boundary_.push_back(k);
      }
    }
  }
  const int squares = mesh.squares_per_axis();
  for (int j = std::max(j0 - 1, 0); j <= std::min(j1, squares - 1); ++j) {
    for (int i = std::max(i0 - 1, 0); i <= std::min(i1, squares - 1); ++i) {
      for (std::size_t e = 2 * (static_cast<std::size_t>(j) * squares + i), end = e + 2; e < end; ++e) {
        for (std::size_t k : mesh.nodes(e)) {
          if (role_[k] == NodeRole::Free) {
            elements_.push_back(e);
            break;
          }
        }
      }
    }
  }
}

Domain Domain::box(const Grid& grid) {
  Domain d(grid);
  const int n = grid.nodes_per_axis();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool edge = i == 0 || j == 0 || i == n - 1 || j == n - 1;
      d.role_[grid.index(i, j)] = edge ? NodeRole::Boundary : NodeRole::Free;
    }
  }
  d.finish(Mesh(grid), 0, n - 1, 0, n - 1);
  return d;
}

Domain Domain::ball(const Grid& grid, const Ball& ball) {
  const double R = grid.macro_radius() * (1.0 + 1e-12);
  for (double c : ball.center) {
    if (c - ball.radius < -R || c + ball.radius > R) {
      throw DomainError("ball is not contained in the grid box");
    }
  }
  Domain d(grid);
  d.ball_ = ball;
  const int n = grid.nodes_per_axis();
  const int i0 = std::max(0, static_cast<int>(std::floor(grid.lattice_coordinate(ball.center[0] - ball.radius))));
  const int i1 = std::min(n - 1, static_cast<int>(std::ceil(grid.lattice_coordinate(ball.center[0] + ball.radius))));
  const int j0 = std::max(0, static_cast<int>(std::floor(grid.lattice_coordinate(ball.center[1] - ball.radius))));
  const int j1 = std::min(n - 1, static_cast<int>(std::ceil(grid.lattice_coordinate(ball.center[1] + ball.radius))));
  auto inside = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < n && j < n && ball.contains(grid.node(i, j));
  };
  static constexpr std::array<std::array<int, 2>, 6> kNeighbours{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}};
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      if (!inside(i, j)) continue;
      bool interior = true;
      for (const auto& o : kNeighbours) {
        if (!inside(i + o[0], j + o[1])) {
          interior = false;
          break;
        }
      }
      d.role_[grid.index(i, j)] = interior ? NodeRole::Free : NodeRole::Boundary;
    }
  }
  d.finish(Mesh(grid), i0, i1, j0, j1);
  return d;
}

namespace {

struct ElementData {
  std::vector<double> lambda;
  std::vector<double> mu;
};

ElementData element_data(const CoefficientField& field, const Mesh& mesh, const Domain& domain) {
  if (field.macro_radius() < mesh.grid().macro_radius()) {
    throw DomainError("coefficient field does not cover the grid box");
  }
  ElementData data;
  data.lambda.assign(mesh.element_count(), 0.0);
  data.mu.assign(mesh.element_count(), 0.0);
  for (std::size_t e : domain.elements()) {
    const CellIndex c = field.cell_of(mesh.barycenter(e));
    data.lambda[e] = field.lambda(c);
    data.mu[e] = field.mu(c);
  }
  return data;
}

std::vector<double> residual(const CoefficientField& field, const Mesh& mesh, const Domain& domain,
                             const ElementData& data, std::span<const double> u,
                             const VectorField* f) {
  std::vector<double> r(domain.free_nodes().size(), 0.0);
  const double area = mesh.element_area();
  const double inv = 1.0 / mesh.grid().spacing();
  for (std::size_t e : domain.elements()) {
    const Vec2 g = mesh.gradient(e, u);
    Vec2 flux = field.flux_with(g, data.lambda[e], data.mu[e]);
    if (f != nullptr) {
      flux[0] -= (*f)[e][0];
      flux[1] -= (*f)[e][1];
    }
    const auto nodes = mesh.nodes(e);
    const auto& shape = Mesh::scaled_shape_gradients(static_cast<int>(e % 2));
    for (int a = 0; a < 3; ++a) {
      const std::ptrdiff_t fi = domain.free_index(nodes[a]);
      if (fi < 0) continue;
      r[fi] += area * inv * (flux[0] * shape[a][0] + flux[1] * shape[a][1]);
    }
  }
  return r;
}

/// Stiffness over the free nodes with per-element weights w_e.
CsrMatrix assemble(const Mesh& mesh, const Domain& domain, const std::vector<double>* weights) {
  const Grid& grid = mesh.grid();
  const auto n = static_cast<std::ptrdiff_t>(grid.nodes_per_axis());
  // neighbour offsets in increasing node-index order
  const std::array<std::ptrdiff_t, 7> offsets{-n - 1, -n, -1, 0, 1, n, n + 1};
  auto slot_of = [&](std::ptrdiff_t diff) {
    for (int s = 0; s < 7; ++s) {
      if (offsets[s] == diff) return s;
    }
    return -1;
  };
  const std::size_t free_count = domain.free_nodes().size();
  std::vector<double> slots(free_count * 7, 0.0);
  const double area = mesh.element_area();
  const double h2 = grid.spacing() * grid.spacing();
  for (std::size_t e : domain.elements()) {
    const double w = weights ? (*weights)[e] : 1.0;
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw AssemblyError("non-positive or non-finite element coefficient");
    }
    const auto nodes = mesh.nodes(e);
    const auto& shape = Mesh::scaled_shape_gradients(static_cast<int>(e % 2));
    for (int a = 0; a < 3; ++a) {
      const std::ptrdiff_t fa = domain.free_index(nodes[a]);
      if (fa < 0) continue;
      for (int b = 0; b < 3; ++b) {
        if (domain.free_index(nodes[b]) < 0) continue;
        const int s = slot_of(static_cast<std::ptrdiff_t>(nodes[b]) -
                              static_cast<std::ptrdiff_t>(nodes[a]));
        slots[fa * 7 + s] += w * area / h2 * dot(shape[a], shape[b]);
      }
    }
  }
  CsrMatrix m;
  m.rows = free_count;
  m.row_start.assign(free_count + 1, 0);
  for (std::size_t r = 0; r < free_count; ++r) {
    m.row_start[r] = m.col.size();
    const auto node = static_cast<std::ptrdiff_t>(domain.free_nodes()[r]);
    for (int s = 0; s < 7; ++s) {
      const double v = slots[r * 7 + s];
      if (v == 0.0 && offsets[s] != 0) continue;
      const std::ptrdiff_t other = node + offsets[s];
      m.col.push_back(static_cast<std::size_t>(domain.free_index(static_cast<std::size_t>(other))));
      m.val.push_back(v);
    }
  }
  m.row_start[free_count] = m.col.size();
  return m;
}

/// Riesz map of the domain: the P1 Laplacian and its preconditioner.
struct RieszMap {
  CsrMatrix g;
  IncompleteCholesky pre;
  double lambda_min;

  RieszMap(const Mesh& mesh, const Domain& domain)
      : g(assemble(mesh, domain, nullptr)),
        pre(g),
        lambda_min(laplacian_lambda_min_bound(mesh.grid())) {}

  /// z = G^{-1} r to near machine precision; returns r.z.
  double solve(const std::vector<double>& r, std::vector<double>& z) const {
    z.assign(r.size(), 0.0);
    const double rn = norm2(r);
    if (rn == 0.0) return 0.0;
    const PcgResult res = pcg(g, pre, r, z, 1e-13 * rn, 20 * r.size() + 100);
    if (!res.converged) throw ConvergenceError("Riesz map solve did not converge");
    return std::max(dot(r, z), 0.0);
  }

  double dual(const std::vector<double>& r, ResidualMode mode) const {
    if (mode == ResidualMode::Bound) return norm2(r) / std::sqrt(lambda_min);
    std::vector<double> z;
    return std::sqrt(solve(r, z));
  }
};

}  // namespace

double laplacian_lambda_min_bound(const Grid& grid) {
  const double s = std::sin(std::numbers::pi / (2.0 * (grid.nodes_per_axis() - 1)));
  return 8.0 * s * s;
}

std::vector<double> apply_operator(const CoefficientField& field, const ScalarField& u,
                                   const Domain& domain, const VectorField* f) {
  if (domain.free_nodes().empty()) throw DomainError("domain has no free nodes to assemble");
  if (!(u.grid() == domain.grid())) throw ValidationError("field and domain grids differ");
  const Mesh mesh(domain.grid());
  const ElementData data = element_data(field, mesh, domain);
  return residual(field, mesh, domain, data, u.values(), f);
}

double dual_norm(const Domain& domain, const std::vector<double>& r) {
  const Mesh mesh(domain.grid());
  const RieszMap riesz(mesh, domain);
  return riesz.dual(r, ResidualMode::Exact);
}

void DirichletProblem::validate() const {
  if (!(boundary_values.grid() == domain.grid())) {
    throw ValidationError("boundary values live on a different grid");
  }
  if (rhs && !(rhs->grid() == domain.grid())) {
    throw ValidationError("right side lives on a different grid");
  }
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (relaxation < 0.0) throw ValidationError("relaxation must be >= 0");
  if (domain.boundary_nodes().empty()) throw ValidationError("boundary node set is empty");
  if (domain.free_nodes().empty()) throw DomainError("domain has no free nodes to assemble");
}

SolveReport solve(const DirichletProblem& problem) {
  problem.validate();
  const Domain& domain = problem.domain;
  const Mesh mesh(domain.grid());
  const ElementData data = element_data(problem.field, mesh, domain);
  const VectorField* f = problem.rhs ? &*problem.rhs : nullptr;
  const RieszMap riesz(mesh, domain);

  SolveReport report{problem.boundary_values, 0, false, 0.0, {}, {}, {}};
  std::span<double> u = report.solution.values();
  if (!problem.warm_start) {
    for (std::size_t k : domain.free_nodes()) u[k] = 0.0;
  }
  const auto& free = domain.free_nodes();

  std::vector<double> r = residual(problem.field, mesh, domain, data, u, f);
  double tol = problem.tolerance;
  if (problem.relative_tolerance) {
    double scale = riesz.dual(r, problem.residual_mode);
    if (problem.warm_start) {
      // a warm start may already be exact; measure against the cold start too
      ScalarField cold = problem.boundary_values;
      for (std::size_t k : free) cold[k] = 0.0;
      scale = std::max(scale, riesz.dual(residual(problem.field, mesh, domain, data, cold.values(), f),
                                         problem.residual_mode));
    }
    tol *= scale;
  }

  if (problem.field.params().family == FluxFamily::Linear) {
    report.method = "pcg-ic0";
    std::vector<double> weights = data.lambda;
    const CsrMatrix k = assemble(mesh, domain, &weights);
    const IncompleteCholesky pre(k);
    const double abs_tol = tol * std::sqrt(riesz.lambda_min);
    // The recursive CG residual can drift from the true one; restart on the
    // true residual until it meets the bound.
    for (int restart = 0; restart < 4; ++restart) {
      std::vector<double> b(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) b[i] = -r[i];
      std::vector<double> w(r.size(), 0.0);
      const std::size_t budget = problem.max_iterations - std::min(problem.max_iterations, report.iterations);
      if (budget == 0) break;
      PcgResult res = pcg(k, pre, b, w, abs_tol, budget);
      for (std::size_t i = 0; i < free.size(); ++i) u[free[i]] += w[i];
      report.iterations += res.iterations;
      if (restart == 0) report.energy_trace = std::move(res.energy_trace);
      r = residual(problem.field, mesh, domain, data, u, f);
      if (norm2(r) <= abs_tol) break;
    }
    report.final_residual = riesz.dual(r, problem.residual_mode);
    report.converged = report.final_residual <= tol;
  } else {
    report.method = "zarantonello";
    const double lam = problem.field.params().lambda_ellipticity;
    const double relax = problem.relaxation > 0.0 ? problem.relaxation : 1.0 / lam;
    const double tau = relax / (lam * lam);
    std::vector<double> z;
    while (true) {
      const double d = std::sqrt(riesz.solve(r, z));
      report.energy_trace.push_back(d);
      report.final_residual = d;
      if (d <= tol) {
        report.converged = true;
        break;
      }
      if (report.iterations >= problem.max_iterations) break;
      for (std::size_t i = 0; i < free.size(); ++i) u[free[i]] -= tau * z[i];
      ++report.iterations;
      r = residual(problem.field, mesh, domain, data, u, f);
    }
  }
  if (!report.converged) {
    report.message = "no convergence after " + std::to_string(report.iterations) +
                     " iterations, residual " + std::to_string(report.final_residual);
  }
  return report;
}

ScalarField harmonic_replacement(const ScalarField& u, const CoefficientField& field,
                                 const Ball& ball, double tolerance) {
  const Grid& grid = u.grid();
  if (2.0 * ball.radius < 4.0 * grid.spacing()) {
    throw ResolutionError("ball spans fewer than 4 grid cells");
  }
  DirichletProblem problem{field, Domain::ball(grid, ball), u, std::nullopt, tolerance};
  problem.warm_start = true;
  SolveReport report = solve(problem);
  if (!report.converged) throw ConvergenceError("harmonic replacement: " + report.message);
  return std::move(report.solution);
}

std::pair<double, double> caccioppoli_gap(const ScalarField& u, const ScalarField& v,
                                          const Ball& ball, const VectorField& f,
                                          double boundary_tolerance) {
  const Grid& grid = u.grid();
  if (!(v.grid() == grid) || !(f.grid() == grid)) {
    throw ValidationError("caccioppoli_gap: fields on different grids");
  }
  const Domain domain = Domain::ball(grid, ball);
  double scale = 1.0;
  for (std::size_t k : grid.nodes_in(ball)) scale = std::max(scale, std::abs(u[k]));
  for (std::size_t k : domain.boundary_nodes()) {
    if (std::abs(u[k] - v[k]) > boundary_tolerance * scale) {
      throw ContractError("u and v differ on the boundary layer of the ball");
    }
  }
  std::vector<double> diff(grid.node_count());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = u[k] - v[k];
  const ScalarField gap = energy_density(ScalarField(grid, std::move(diff)));
  const ScalarField fsq = f.squared_density();

  const auto inner = grid.nodes_in(Ball{ball.center, 0.5 * ball.radius});
  const auto outer = grid.nodes_in(ball);
  if (inner.empty()) throw DomainError("half ball contains no nodes");
  double lhs = 0.0;
  for (std::size_t k : inner) lhs += gap[k];
  double rhs = 0.0;
  for (std::size_t k : outer) rhs += fsq[k];
  return {lhs / static_cast<double>(inner.size()), rhs / static_cast<double>(outer.size())};
}

}  // namespace czlab
