#include <Eigen/Dense>
#include <cmath>

#include "czlab/errors.hpp"
#include "czlab/mesh.hpp"
#include "czlab/rng.hpp"
#include "czlab/solver.hpp"
#include "doctest.h"

using namespace czlab;

namespace {

CoefficientField random_cells(double R, std::uint64_t seed) {
  FluxParams params;
  const int n = static_cast<int>(2 * R);
  std::vector<double> lam(static_cast<std::size_t>(n) * n);
  Rng rng(seed);
  for (double& l : lam) l = rng.uniform(0.25, 4.0);
  return CoefficientField(params, R, seed, lam, std::vector<double>(lam.size(), 0.0));
}

ScalarField affine(const Grid& g, double a, double b, double c) {
  ScalarField u(g);
  for (std::size_t k = 0; k < g.node_count(); ++k) u[k] = a + b * g.node(k)[0] + c * g.node(k)[1];
  return u;
}

}  // namespace

TEST_CASE("box solve matches a dense Eigen solve of the same system") {
  const Grid g(2.0, 0.5);
  const Mesh mesh(g);
  const CoefficientField field = random_cells(2.0, 1);
  const ScalarField data = affine(g, 0.0, 1.0, 0.5);
  const Domain dom = Domain::box(g);
  DirichletProblem prob{field, dom, data, std::nullopt, 1e-13};
  prob.relative_tolerance = true;
  const SolveReport rep = solve(prob);
  REQUIRE(rep.converged);

  // The residual is affine in the free values; recover the matrix column by column.
  const auto& free = dom.free_nodes();
  const std::size_t n = free.size();
  ScalarField base = data;
  for (std::size_t k : free) base[k] = 0.0;
  const std::vector<double> r0 = apply_operator(field, base, dom);
  Eigen::MatrixXd A(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    ScalarField e = base;
    e[free[c]] = 1.0;
    const std::vector<double> rc = apply_operator(field, e, dom);
    for (std::size_t r = 0; r < n; ++r) A(r, c) = rc[r] - r0[r];
  }
  Eigen::VectorXd b(n);
  for (std::size_t r = 0; r < n; ++r) b(r) = -r0[r];
  const Eigen::VectorXd x = A.ldlt().solve(b);
  for (std::size_t c = 0; c < n; ++c) CHECK(rep.solution[free[c]] == doctest::Approx(x(c)).epsilon(1e-9));
}

TEST_CASE("constant coefficients reproduce affine data") {
  const Grid g(3.0, 0.25);
  FluxParams params;
  const CoefficientField field = CoefficientField::constant(params, 3.0, 1.7);
  const ScalarField u = affine(g, 1.0, -0.4, 2.0);
  DirichletProblem prob{field, Domain::box(g), u, std::nullopt, 1e-12};
  prob.relative_tolerance = true;
  const SolveReport rep = solve(prob);
  for (std::size_t k = 0; k < g.node_count(); ++k) CHECK(rep.solution[k] == doctest::Approx(u[k]).epsilon(1e-9));
}

TEST_CASE("fixed-point iteration contracts for the perturbed family") {
  FluxParams params;
  params.lambda_ellipticity = 2.0;
  params.family = FluxFamily::BoundedMonotonePerturbation;
  params.perturbation_weight = 0.5;
  const CoefficientField field = sample_environment(5, 10.0, params);
  const Grid g(10.0, 0.5);
  VectorField f(g);
  Rng rng(6);
  for (std::size_t e = 0; e < f.size(); ++e) f[e] = {rng.normal(), rng.normal()};
  DirichletProblem prob{field, Domain::box(g), ScalarField(g), f, 1e-8};
  prob.relative_tolerance = true;
  const SolveReport rep = solve(prob);
  CHECK(rep.converged);
  CHECK(rep.method.find("zarantonello") != std::string::npos);
  const auto& tr = rep.energy_trace;
  REQUIRE(tr.size() > 10);
  const double ratio = std::pow(tr.back() / tr[tr.size() - 11], 0.1);
  CHECK(ratio <= std::sqrt(1.0 - std::pow(2.0, -4.0)) + 0.05);
}

TEST_CASE("ball domains and harmonic replacement") {
  const Grid g(4.0, 0.25);
  FluxParams params;
  const CoefficientField field = CoefficientField::constant(params, 4.0, 1.0);
  const Ball b{{0, 0}, 2.0};
  const Domain dom = Domain::ball(g, b);
  CHECK(!dom.free_nodes().empty());
  CHECK(!dom.boundary_nodes().empty());
  for (std::size_t k : dom.free_nodes()) CHECK(b.contains(g.node(k)));
  const ScalarField u = affine(g, 0.0, 1.0, 1.0);
  const ScalarField v = harmonic_replacement(u, field, b, 1e-12);
  for (std::size_t k : g.nodes_in(b)) CHECK(v[k] == doctest::Approx(u[k]).epsilon(1e-8));
  const auto gap = caccioppoli_gap(u, v, b, VectorField(g));
  CHECK(gap.first == doctest::Approx(0.0));
}

TEST_CASE("problem validation") {
  const Grid g(2.0, 0.5);
  FluxParams params;
  const CoefficientField field = CoefficientField::constant(params, 2.0, 1.0);
  DirichletProblem prob{field, Domain::box(g), ScalarField(g), std::nullopt, -1.0};
  CHECK_THROWS_AS(prob.validate(), ValidationError);
  CHECK(laplacian_lambda_min_bound(g) > 0.0);
}
