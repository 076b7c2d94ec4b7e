#include "czlab/flux.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "czlab/errors.hpp"
#include "czlab/rng.hpp"

namespace czlab {

std::string to_string(FluxFamily family) {
  return family == FluxFamily::Linear ? "linear" : "perturbed";
}

FluxFamily parse_flux_family(const std::string& name) {
  if (name == "linear") return FluxFamily::Linear;
  if (name == "perturbed" || name == "nonlinear") return FluxFamily::BoundedMonotonePerturbation;
  throw ValidationError("unknown flux family '" + name + "'");
}

double FluxParams::lambda_upper() const {
  if (family == FluxFamily::Linear) return lambda_ellipticity;
  return lambda_ellipticity - perturbation_weight;
}

void FluxParams::validate() const {
  if (!(lambda_ellipticity >= 1.0) || !std::isfinite(lambda_ellipticity)) {
    throw ValidationError("lambda_ellipticity must be >= 1");
  }
  if (!(perturbation_weight >= 0.0) || !std::isfinite(perturbation_weight)) {
    throw ValidationError("perturbation_weight must be >= 0");
  }
  if (family == FluxFamily::Linear && perturbation_weight != 0.0) {
    throw ValidationError("perturbation_weight must be 0 for the linear family");
  }
  if (lambda_upper() < lambda_lower()) {
    throw ValidationError("perturbation_weight too large: need 1/Lambda + w <= Lambda");
  }
}

namespace {

int cell_floor(double v) { return static_cast<int>(std::floor(v)); }

}  // namespace

CoefficientField::CoefficientField(FluxParams params, double macro_radius, std::uint64_t seed,
                                   std::vector<double> lambda, std::vector<double> mu)
    : params_(params),
      macro_radius_(macro_radius),
      seed_(seed),
      cells_per_axis_(0),
      cell_origin_(0),
      lambda_(std::move(lambda)),
      mu_(std::move(mu)) {
  if (!(macro_radius > 0.0) || !std::isfinite(macro_radius)) {
    throw ValidationError("macro_radius must be positive");
  }
  cell_origin_ = cell_floor(-macro_radius);
  cells_per_axis_ = static_cast<int>(std::ceil(macro_radius)) - cell_origin_;
  const auto n = static_cast<std::size_t>(cells_per_axis_) * cells_per_axis_;
  if (lambda_.size() != n) {
    throw ValidationError("lambda array has " + std::to_string(lambda_.size()) +
                          " cells, expected " + std::to_string(n));
  }
  if (mu_.empty()) mu_.assign(n, 0.0);
  if (mu_.size() != n) throw ValidationError("mu array size mismatch");
}

CoefficientField CoefficientField::constant(const FluxParams& params, double macro_radius,
                                            double lambda) {
  const int origin = cell_floor(-macro_radius);
  const int per_axis = static_cast<int>(std::ceil(macro_radius)) - origin;
  const auto n = static_cast<std::size_t>(per_axis) * per_axis;
  return CoefficientField(params, macro_radius, 0, std::vector<double>(n, lambda),
                          std::vector<double>(n, 0.0));
}

CellIndex CoefficientField::cell_of(const Point& x) const {
  for (double v : x) {
    if (!(std::abs(v) <= macro_radius_)) {
      throw DomainError("point outside the box [-R, R]^2");
    }
  }
  CellIndex c{cell_floor(x[0]) - cell_origin_, cell_floor(x[1]) - cell_origin_};
  c.i = std::clamp(c.i, 0, cells_per_axis_ - 1);
  c.j = std::clamp(c.j, 0, cells_per_axis_ - 1);
  return c;
}

CoefficientField CoefficientField::with_cell(CellIndex c, double lambda, double mu) const {
  CoefficientField copy = *this;
  copy.lambda_[linear_index(c)] = lambda;
  copy.mu_[linear_index(c)] = mu;
  return copy;
}

bool CoefficientField::operator==(const CoefficientField& o) const {
  return params_.lambda_ellipticity == o.params_.lambda_ellipticity &&
         params_.family == o.params_.family &&
         params_.perturbation_weight == o.params_.perturbation_weight &&
         macro_radius_ == o.macro_radius_ && seed_ == o.seed_ && lambda_ == o.lambda_ &&
         mu_ == o.mu_;
}

CoefficientField sample_environment(std::uint64_t seed, double macro_radius,
                                    const FluxParams& params) {
  if (!(macro_radius >= 10.0)) {
    throw DomainError("macro_radius must be >= 10");
  }
  params.validate();
  const int origin = cell_floor(-macro_radius);
  const int per_axis = static_cast<int>(std::ceil(macro_radius)) - origin;
  const auto n = static_cast<std::size_t>(per_axis) * per_axis;

  Rng rng(mix_seed(seed, 0));
  std::vector<double> lambda(n);
  std::vector<double> mu(n, 0.0);
  const double lo = params.lambda_lower();
  const double hi = params.lambda_upper();
  const bool perturbed = params.family == FluxFamily::BoundedMonotonePerturbation;
  for (std::size_t k = 0; k < n; ++k) {
    lambda[k] = lo == hi ? lo : rng.uniform(lo, hi);
    if (perturbed) mu[k] = params.perturbation_weight * rng.uniform();
  }
  return CoefficientField(params, macro_radius, seed, std::move(lambda), std::move(mu));
}

Vec2 evaluate_flux(const CoefficientField& field, const Vec2& xi, const Point& x) {
  return field.flux_in_cell(xi, field.cell_of(x));
}

bool AxiomReport::lipschitz_ok() const {
  return worst_lipschitz_ratio <= lambda_ellipticity * (1.0 + 1e-12);
}

bool AxiomReport::monotone_ok() const {
  return worst_monotonicity_ratio >= (1.0 / lambda_ellipticity) * (1.0 - 1e-12);
}

namespace {

Vec2 random_vector(Rng& rng) {
  const double magnitude = std::pow(10.0, rng.uniform(-4.0, 5.0));
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {magnitude * std::cos(angle), magnitude * std::sin(angle)};
}

}  // namespace

AxiomReport check_flux_axioms(const CoefficientField& field, std::size_t n_samples,
                              std::uint64_t rng_seed) {
  if (n_samples < 1) throw ValidationError("n_samples must be >= 1");
  AxiomReport report;
  report.lambda_ellipticity = field.params().lambda_ellipticity;
  report.worst_lipschitz_ratio = 0.0;
  report.worst_monotonicity_ratio = std::numeric_limits<double>::infinity();

  Rng rng(mix_seed(rng_seed, 1));
  const std::size_t cells = field.cell_count();
  for (std::size_t k = 0; k < n_samples; ++k) {
    const CellIndex c = field.cell_at(k % cells);
    const Vec2 xi = random_vector(rng);
    // Half the samples put eta within two decades of xi, which probes the
    // local Jacobian without drowning the ratio in rounding error.
    Vec2 eta = random_vector(rng);
    if (k % 2 == 1) {
      const double scale = std::pow(10.0, rng.uniform(-2.0, 0.0)) * std::hypot(xi[0], xi[1]);
      const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      eta = {xi[0] + scale * std::cos(angle), xi[1] + scale * std::sin(angle)};
    }
    const Vec2 diff{xi[0] - eta[0], xi[1] - eta[1]};
    const double diff_sq = dot(diff, diff);
    if (diff_sq == 0.0) continue;
    const Vec2 a = field.flux_in_cell(xi, c);
    const Vec2 b = field.flux_in_cell(eta, c);
    const Vec2 da{a[0] - b[0], a[1] - b[1]};
    const double lip = std::sqrt(dot(da, da)) / std::sqrt(diff_sq);
    const double mono = dot(diff, da) / diff_sq;
    if (lip > report.worst_lipschitz_ratio) {
      report.worst_lipschitz_ratio = lip;
      report.worst_lipschitz_cell = c;
    }
    if (mono < report.worst_monotonicity_ratio) {
      report.worst_monotonicity_ratio = mono;
      report.worst_monotonicity_cell = c;
    }
    ++report.samples;
  }
  return report;
}

void write_field(std::ostream& out, const CoefficientField& field) {
  const auto precision = out.precision();
  out.precision(17);
  out << "czlab-field 1\n";
  out << "dimension " << field.dimension() << "\n";
  out << "macro_radius " << field.macro_radius() << "\n";
  out << "lambda " << field.params().lambda_ellipticity << "\n";
  out << "family " << to_string(field.params().family) << "\n";
  out << "perturbation_weight " << field.params().perturbation_weight << "\n";
  out << "seed " << field.seed() << "\n";
  out << "cells_per_axis " << field.cells_per_axis() << "\n";
  out << "cell_origin " << field.cell_origin() << "\n";
  out << "values\n";
  const auto lam = field.lambda_values();
  const auto mu = field.mu_values();
  for (std::size_t k = 0; k < lam.size(); ++k) {
    out << lam[k] << ' ' << mu[k] << '\n';
  }
  out.precision(precision);
}

CoefficientField read_field(std::istream& in) {
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "czlab-field" || version != 1) {
    throw IoError("not a czlab-field v1 file");
  }
  FluxParams params;
  double radius = 0.0;
  std::uint64_t seed = 0;
  int dimension = 0;
  int per_axis = 0;
  int origin = 0;
  std::string key;
  while (in >> key && key != "values") {
    if (key == "dimension") in >> dimension;
    else if (key == "macro_radius") in >> radius;
    else if (key == "lambda") in >> params.lambda_ellipticity;
    else if (key == "family") {
      std::string name;
      in >> name;
      params.family = parse_flux_family(name);
    } else if (key == "perturbation_weight") in >> params.perturbation_weight;
    else if (key == "seed") in >> seed;
    else if (key == "cells_per_axis") in >> per_axis;
    else if (key == "cell_origin") in >> origin;
    else throw IoError("unknown field header key '" + key + "'");
  }
  if (key != "values" || dimension != 2) throw IoError("malformed field header");
  const auto n = static_cast<std::size_t>(per_axis) * per_axis;
  std::vector<double> lambda(n);
  std::vector<double> mu(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(in >> lambda[k] >> mu[k])) throw IoError("truncated field values");
  }
  CoefficientField field(params, radius, seed, std::move(lambda), std::move(mu));
  if (field.cells_per_axis() != per_axis || field.cell_origin() != origin) {
    throw IoError("cell layout does not match macro_radius");
  }
  return field;
}

}  // namespace czlab
