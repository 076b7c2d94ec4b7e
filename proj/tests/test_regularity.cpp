#include <cmath>
#include <vector>

#include "czlab/errors.hpp"
#include "czlab/regularity.hpp"
#include "czlab/rng.hpp"
#include "doctest.h"

using namespace czlab;

namespace {

ScalarField affine(const Grid& g, double a, double b) {
  ScalarField u(g);
  for (std::size_t k = 0; k < g.node_count(); ++k) u[k] = a * g.node(k)[0] + b * g.node(k)[1];
  return u;
}

}  // namespace

TEST_CASE("affine data gives the smallest ladder radius") {
  const Grid g(8.0, 0.25);
  const LipschitzReport r = minimal_radius(affine(g, 0.6, 0.8), Ball{{0, 0}, 4.0}, 1.0);
  CHECK(r.r_star == doctest::Approx(0.25));
  CHECK(r.M_drive == doctest::Approx(1.0));
  CHECK_THROWS_AS(minimal_radius(affine(g, 1, 0), Ball{{0, 0}, 4.0}, 0.0), CalibrationError);
}

TEST_CASE("minimal radius agrees with an exhaustive ladder scan") {
  const Grid g(8.0, 0.25);
  const Ball region{{0.5, -0.25}, 6.0};
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    ScalarField d(g);
    for (std::size_t k = 0; k < g.node_count(); ++k) d[k] = rng.uniform() < 0.01 ? 50.0 : rng.uniform();
    const double C = 1.0 + rng.uniform();
    double m2 = 0.0;
    const auto nodes = g.nodes_in(region);
    for (std::size_t k : nodes) m2 += d[k];
    m2 /= static_cast<double>(nodes.size());
    std::vector<double> radii;
    for (int j = 0;; ++j) {
      const double r = 0.25 * std::pow(2.0, j / 4.0);
      if (r > 3.0 * (1 + 1e-12)) break;
      radii.push_back(r);
    }
    double expect = -1.0;
    for (std::size_t j = 0; j < radii.size() && expect < 0; ++j) {
      bool all = true;
      for (std::size_t i = j; i < radii.size(); ++i) all = all && disc_average(d, region.center, radii[i]) <= C * m2;
      if (all) expect = radii[j];
    }
    if (expect < 0) {
      CHECK_THROWS_AS(minimal_radius_from_density(d, region, C), CalibrationError);
    } else {
      CHECK(minimal_radius_from_density(d, region, C).r_star == doctest::Approx(expect));
    }
  }
}

TEST_CASE("K from X") {
  CHECK(k_from_x(1.0) == doctest::Approx(std::pow(std::log(3.0), 2)));
  CHECK(k_from_x(3.0) == doctest::Approx(9.0 * std::pow(std::log(5.0), 2)));
}

TEST_CASE("constant environment gives a constant K field") {
  FluxParams params;
  const CoefficientField env = CoefficientField::constant(params, 10.0, 1.3);
  ProbeConfig cfg;
  cfg.spacing = 0.5;
  cfg.probe_radius = 4.0;
  cfg.stride = 4;
  cfg.C_lip = 2.0;
  const KField k = build_K_field(env, cfg);
  CHECK(k.probes > 0);
  CHECK(k.censored_probes == 0);
  for (double v : k.K) {
    CHECK(v >= 1.0);
    CHECK(v == doctest::Approx(k.K.front()));
  }
}

TEST_CASE("membership in the A class") {
  const Grid g(6.0, 0.25);
  const ScalarField ones(g, 1.0);
  const MembershipReport a = membership_A(affine(g, 1.0, 2.0), Ball{{0, 0}, 4.0}, ones);
  CHECK(a.passed);
  CHECK(a.worst_ratio == doctest::Approx(1.0).epsilon(0.05));
  const MembershipReport z = membership_A(ScalarField(g), Ball{{0, 0}, 4.0}, ones);
  CHECK(z.passed);
  CHECK(z.worst_ratio == 0.0);
}

TEST_CASE("Y_R from K values") {
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  const MomentReport one = compute_Y_R(std::vector<double>(10, 1.0), e, 2.0);
  CHECK(one.Z_R == doctest::Approx(1.0));
  CHECK(one.Y_R == doctest::Approx(2.0));
  const MomentReport two = compute_Y_R(std::vector<double>(10, 2.0), e, 1.0);
  CHECK(two.Z_R == doctest::Approx(16.0));
  CHECK(two.Y_R == doctest::Approx(8.0));
  CHECK(two.identity_error < 1e-12);
}

TEST_CASE("Jensen check") {
  CHECK(jensen_threshold(0.5) == doctest::Approx(1.0));
  const ExponentSet e = derive_exponents(4, 8, 3, 0.25);
  Rng rng(5);
  std::vector<double> k;
  for (int i = 0; i < 500; ++i) k.push_back(1.0 + 3.0 * rng.uniform());
  CHECK(jensen_check(k, e).passed);
}

TEST_CASE("tail concavity") {
  Rng rng(8);
  const double n = 0.75;
  std::vector<double> expo, convex;
  std::vector<std::vector<double>> groups(50);
  for (int i = 0; i < 20000; ++i) {
    const double x = -std::log(1.0 - rng.uniform());
    expo.push_back(std::pow(1.0 + x, 1.0 / n));
    groups[static_cast<std::size_t>(i % 50)].push_back(expo.back());
    // two-scale mixture: log survival bends upwards
    const double y = rng.uniform() < 0.9 ? x : 20.0 * x;
    convex.push_back(std::pow(1.0 + y, 1.0 / n));
  }
  CHECK(k_tail_concavity(expo, n).passed);
  CHECK_FALSE(k_tail_concavity(convex, n).passed);
  const ConcavityReport g = k_tail_concavity(groups, n);
  CHECK(g.passed);
  CHECK(g.points >= 3);
}

TEST_CASE("tail concavity reads lattice laws at their atoms") {
  // k^n on the integers with geometric weights: log-linear at the atoms,
  // a staircase in between
  Rng rng(9);
  const double n = 0.75;
  std::vector<double> k;
  for (int i = 0; i < 30000; ++i) {
    int j = 1;
    while (rng.uniform() < std::exp(-0.5) && j < 30) ++j;
    k.push_back(std::pow(j * (1.0 + 1e-3 * rng.uniform()), 1.0 / n));
  }
  const ConcavityReport r = k_tail_concavity(k, n);
  CHECK(r.passed);
  CHECK(r.points >= 5);
  for (double t : r.thresholds) {
    const double x = std::pow(t, n);
    CHECK(std::abs(x - std::round(x)) < 0.01);
  }
}

