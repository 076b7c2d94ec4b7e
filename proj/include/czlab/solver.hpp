#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "czlab/flux.hpp"
#include "czlab/lattice.hpp"
#include "czlab/mesh.hpp"

namespace czlab {

enum class NodeRole : std::uint8_t { Outside, Free, Boundary };

/// Node roles for a Dirichlet problem on the whole box or on a ball.
///
/// Box: the edge nodes carry the data. Ball: a node of the ball is free when
/// its six mesh neighbours all lie in the ball; the remaining ball nodes form
/// the boundary layer. Only elements touching a free node are assembled.
class Domain {
 public:
  static Domain box(const Grid& grid);
  static Domain ball(const Grid& grid, const Ball& ball);

  const Grid& grid() const { return grid_; }
  const std::optional<Ball>& ball() const { return ball_; }
  NodeRole role(std::size_t k) const { return role_[k]; }
  const std::vector<std::size_t>& free_nodes() const { return free_; }
  const std::vector<std::size_t>& boundary_nodes() const { return boundary_; }
  const std::vector<std::size_t>& elements() const { return elements_; }
  /// Position of node k among the free nodes, or -1.
  std::ptrdiff_t free_index(std::size_t k) const { return free_index_[k]; }

 private:
  explicit Domain(const Grid& grid);
  /// Collects node lists and elements from the node window [i0,i1] x [j0,j1].
  void finish(const Mesh& mesh, int i0, int i1, int j0, int j1);

  Grid grid_;
  std::optional<Ball> ball_;
  std::vector<NodeRole> role_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> boundary_;
  std::vector<std::size_t> elements_;
  std::vector<std::ptrdiff_t> free_index_;
};

/// Discrete weak residual <A_f(u), phi_i> = sum_T |T| (a(grad u|_T, x_T) - f_T) . grad phi_i|_T
/// for every free node i, with x_T the element barycenter. The equation is
/// -div a(grad u, x) = -div f.
std::vector<double> apply_operator(const CoefficientField& field, const ScalarField& u,
                                   const Domain& domain, const VectorField* f = nullptr);

/// How SolveReport::final_residual is measured.
///   Exact: sqrt(r^T G^{-1} r) with an inner Laplacian solve.
///   Bound: ||r||_2 / sqrt(lambda_min(G)), an upper bound that skips the solve.
enum class ResidualMode { Exact, Bound };

struct DirichletProblem {
  CoefficientField field;
  Domain domain;
  /// Full-grid values; entries on boundary nodes are the Dirichlet data.
  ScalarField boundary_values;
  std::optional<VectorField> rhs;
  double tolerance = 1e-8;
  /// If set, tolerance is relative to the dual residual of the initial guess
  /// (with warm_start, the larger of the warm and cold initial residuals).
  bool relative_tolerance = false;
  std::size_t max_iterations = 20000;
  /// Zarantonello step tau = relaxation / Lambda^2; 0 picks 1/Lambda, the
  /// contraction-optimal step with factor sqrt(1 - Lambda^-4).
  double relaxation = 0.0;
  /// Start from boundary_values on free nodes instead of zero.
  bool warm_start = false;
  ResidualMode residual_mode = ResidualMode::Exact;

  void validate() const;
};

struct SolveReport {
  ScalarField solution;
  std::size_t iterations = 0;
  bool converged = false;
  /// Dual (H^{-1}-type) norm of the weak residual of the returned solution.
  double final_residual = 0.0;
  /// Linear: energy-norm distance of each CG iterate to the returned one.
  /// Nonlinear: dual residual norm of each fixed-point iterate.
  std::vector<double> energy_trace;
  std::string method;
  std::string message;
};

/// Linear family: IC(0)-preconditioned CG on the assembled stiffness matrix.
/// Perturbed family: u <- u - tau G^{-1} A_f(u) with G the P1 Laplacian.
/// Never throws on non-convergence; check SolveReport::converged.
SolveReport solve(const DirichletProblem& problem);

/// sqrt(r^T G^{-1} r) for a residual over the free nodes of the domain.
double dual_norm(const Domain& domain, const std::vector<double>& residual);

/// Lower bound 8 sin^2(pi / (2N)) for the smallest eigenvalue of the P1
/// Laplacian on any domain inside a box of N x N squares.
double laplacian_lambda_min_bound(const Grid& grid);

/// The f = 0 solution on the discrete ball with v = u on its boundary layer.
/// Nodes off the free set keep the values of u.
ScalarField harmonic_replacement(const ScalarField& u, const CoefficientField& field,
                                 const Ball& ball, double tolerance);

/// (mean over B_{r/2} of |grad u - grad v|^2, mean over B_r of |f|^2).
std::pair<double, double> caccioppoli_gap(const ScalarField& u, const ScalarField& v,
                                          const Ball& ball, const VectorField& f,
                                          double boundary_tolerance = 1e-8);

}  // namespace czlab
