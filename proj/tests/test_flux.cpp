#include <sstream>

#include "czlab/errors.hpp"
#include "czlab/flux.hpp"
#include "czlab/rng.hpp"
#include "doctest.h"

using namespace czlab;

TEST_CASE("rng streams are reproducible and distinct") {
  Rng a(42), b(42), c(mix_seed(42, 1));
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  CHECK(Rng(42).bits() != c.bits());
  Rng u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.index(5) < 5);
  }
}

TEST_CASE("sample_environment respects the ellipticity range") {
  FluxParams params;
  params.lambda_ellipticity = 4.0;
  const CoefficientField f = sample_environment(3, 12.0, params);
  CHECK(f.cells_per_axis() == 24);
  for (double l : f.lambda_values()) {
    CHECK(l >= 0.25);
    CHECK(l <= 4.0);
  }
  CHECK(f == sample_environment(3, 12.0, params));
  CHECK_FALSE(f == sample_environment(4, 12.0, params));
  CHECK_THROWS_AS(sample_environment(0, 4.0, params), DomainError);
}

TEST_CASE("linear flux is lambda times xi") {
  FluxParams params;
  const CoefficientField f = CoefficientField::constant(params, 10.0, 2.5);
  const Vec2 a = evaluate_flux(f, {1.0, -2.0}, {0.3, 0.4});
  CHECK(a[0] == doctest::Approx(2.5));
  CHECK(a[1] == doctest::Approx(-5.0));
  CHECK_THROWS_AS(evaluate_flux(f, {1.0, 0.0}, {11.0, 0.0}), DomainError);
}

TEST_CASE("cells are half-open except on the closing edge") {
  FluxParams params;
  const CoefficientField f = CoefficientField::constant(params, 10.0, 1.0);
  CHECK(f.cell_of({-10.0, -10.0}) == CellIndex{0, 0});
  CHECK(f.cell_of({-9.0, -10.0}) == CellIndex{1, 0});
  CHECK(f.cell_of({10.0, 10.0}) == CellIndex{19, 19});
}

TEST_CASE("axiom checker accepts sampled fields and flags a bad cell") {
  FluxParams params;
  params.lambda_ellipticity = 2.0;
  params.family = FluxFamily::BoundedMonotonePerturbation;
  params.perturbation_weight = 0.5;
  const CoefficientField f = sample_environment(9, 10.0, params);
  CHECK(check_flux_axioms(f, 4000, 1).passed());
  const CoefficientField bad = f.with_cell({3, 4}, 5.0);
  const AxiomReport rep = check_flux_axioms(bad, 4000, 1);
  CHECK_FALSE(rep.lipschitz_ok());
  CHECK(rep.worst_lipschitz_cell == CellIndex{3, 4});
}

TEST_CASE("field text round trip is bit-exact") {
  FluxParams params;
  const CoefficientField f = sample_environment(11, 10.0, params);
  std::stringstream s;
  write_field(s, f);
  CHECK(read_field(s) == f);
}
