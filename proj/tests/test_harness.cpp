#include <cmath>
#include <sstream>

#include "czlab/config.hpp"
#include "czlab/errors.hpp"
#include "czlab/report.hpp"
#include "czlab/rng.hpp"
#include "czlab/tailfit.hpp"
#include "czlab/trial.hpp"
#include "doctest.h"

using namespace czlab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.macro_radius = 10;
  c.spacing = 0.5;
  c.probe_spacing = 0.5;
  c.probe_radius = 4;
  c.probe_stride = 4;
  c.C_lip = 2.0;
  c.spike_density = 0.01;
  c.ladder_max = 6;
  return c;
}

TailTable power_law(double slope, double noise, std::uint64_t seed) {
  TailTable t;
  t.predicted_slope = -0.5;
  Rng rng(seed);
  for (int j = 2; j <= 12; ++j) {
    const double T = std::pow(2.0, j / 2.0);
    t.points.push_back({T, 0.3 * std::pow(T, slope) * std::exp(noise * rng.normal()), 10});
  }
  return t;
}

}  // namespace

TEST_CASE("config parse, canonical text and hash") {
  std::istringstream in("# comment\nR = 16\nf_pattern = smooth\nC_lip = 2.5\n");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.macro_radius == 16.0);
  CHECK(c.f_pattern == FPattern::Smooth);
  CHECK(c.C_lip == 2.5);
  std::istringstream again(canonical_text(c));
  const ExperimentConfig d = parse_config(again);
  CHECK(canonical_text(d) == canonical_text(c));
  CHECK(config_hash(d) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(c) != config_hash(ExperimentConfig{}));
}

TEST_CASE("config errors name the key") {
  std::istringstream unknown("bogus = 1\n");
  CHECK_THROWS_WITH_AS(parse_config(unknown), doctest::Contains("bogus"), ValidationError);
  std::istringstream bad("spacing = 0.3\n");
  CHECK_THROWS_WITH_AS(parse_config(bad), doctest::Contains("spacing"), ValidationError);
  ExperimentConfig c;
  CHECK_THROWS_AS(set_config_value(c, "R", "abc"), ValidationError);
  set_config_value(c, "R", "20");
  CHECK(c.macro_radius == 20.0);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("tail fit recovers an exact power law") {
  const TailFit f = fit_tail_exponent(power_law(-0.7, 0.0, 1), 4.0, 64.0);
  CHECK(f.slope == doctest::Approx(-0.7));
  CHECK(f.stderr_slope == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(f.x.size() == 9);
}

TEST_CASE("tail fit on noisy data stays within a few standard errors") {
  const TailFit f = fit_tail_exponent(power_law(-0.7, 0.05, 2), 4.0, 64.0);
  CHECK(std::abs(f.slope + 0.7) < 4.0 * f.stderr_slope + 1e-3);
}

TEST_CASE("tail fit drops zero fractions and needs five points") {
  TailTable t = power_law(-0.7, 0.0, 3);
  for (auto& p : t.points)
    if (p.T_over_tstar > 10) p.pooled_fraction = 0.0;
  CHECK_THROWS_AS(fit_tail_exponent(t, 4.0, 64.0), FitError);
}

TEST_CASE("CSV provenance line") {
  const std::string line = provenance_line(ExperimentConfig{});
  CHECK(line.rfind("# czlab config_hash=", 0) == 0);
  CHECK(line.find("C_lip=") != std::string::npos);
}

TEST_CASE("zero right side gives a zero trial") {
  ExperimentConfig c = small_config();
  c.f_pattern = FPattern::Zero;
  const TrialRecord r = run_trial(c, 1);
  CHECK(r.ok);
  CHECK(r.t_star == 0.0);
  CHECK(r.good_lambda.empty());
}

TEST_CASE("trials are independent of the worker count") {
  const ExperimentConfig c = small_config();
  const auto a = run_trials(c, 3, 3, 1);
  const auto b = run_trials(c, 3, 3, 3);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a[i].seed == 3 + i);
    CHECK(trial_json(c, a[i]) == trial_json(c, b[i]));
    const TrialRecord back = read_trial_json(trial_json(c, a[i]));
    CHECK(trial_json(c, back) == trial_json(c, a[i]));
  }
}
