#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace czlab {

using Vec2 = std::array<double, 2>;
using Point = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

enum class FluxFamily { Linear, BoundedMonotonePerturbation };

std::string to_string(FluxFamily family);
FluxFamily parse_flux_family(const std::string& name);

/// Structural parameters of the random monotone flux.
///
/// Linear:      a(xi, x) = lambda(x) xi, lambda ~ U[1/Lambda, Lambda].
/// Perturbed:   a(xi, x) = lambda(x) xi + mu(x) xi / sqrt(1 + |xi|^2),
///              lambda ~ U[1/Lambda, Lambda - w], mu ~ U[0, w].
/// With these laws a(., x) is (1/Lambda)-monotone and Lambda-Lipschitz in
/// every cell.
struct FluxParams {
  double lambda_ellipticity = 4.0;
  FluxFamily family = FluxFamily::Linear;
  double perturbation_weight = 0.0;

  void validate() const;
  double lambda_lower() const { return 1.0 / lambda_ellipticity; }
  double lambda_upper() const;
};

struct CellIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// One realization of the checkerboard flux on the unit cells covering
/// [-R, R]^2. Immutable after construction.
class CoefficientField {
 public:
  /// Builds a field from explicit per-cell scalars (row-major, j outer).
  /// No lower bound on the radius here; sample_environment enforces R >= 10.
  CoefficientField(FluxParams params, double macro_radius, std::uint64_t seed,
                   std::vector<double> lambda, std::vector<double> mu);

  /// Constant lambda everywhere (mu = 0).
  static CoefficientField constant(const FluxParams& params, double macro_radius,
                                   double lambda);

  const FluxParams& params() const { return params_; }
  double macro_radius() const { return macro_radius_; }
  std::uint64_t seed() const { return seed_; }
  int dimension() const { return 2; }
  int cells_per_axis() const { return cells_per_axis_; }
  /// Integer coordinate of the lower-left corner of cell (0, 0).
  int cell_origin() const { return cell_origin_; }
  std::size_t cell_count() const { return lambda_.size(); }

  /// Half-open cells [z, z+1); the closing edge x = R joins the last cell.
  CellIndex cell_of(const Point& x) const;
  std::size_t linear_index(CellIndex c) const {
    return static_cast<std::size_t>(c.j) * cells_per_axis_ + c.i;
  }
  CellIndex cell_at(std::size_t linear) const {
    return {static_cast<int>(linear % cells_per_axis_),
            static_cast<int>(linear / cells_per_axis_)};
  }

  double lambda(CellIndex c) const { return lambda_[linear_index(c)]; }
  double mu(CellIndex c) const { return mu_[linear_index(c)]; }
  std::span<const double> lambda_values() const { return lambda_; }
  std::span<const double> mu_values() const { return mu_; }

  /// Flux in a known cell; no bounds check on the cell.
  Vec2 flux_in_cell(const Vec2& xi, CellIndex c) const {
    return flux_with(xi, lambda(c), mu(c));
  }
  Vec2 flux_with(const Vec2& xi, double lam, double m) const {
    if (params_.family == FluxFamily::Linear || m == 0.0) {
      return {lam * xi[0], lam * xi[1]};
    }
    const double s = lam + m / std::sqrt(1.0 + dot(xi, xi));
    return {s * xi[0], s * xi[1]};
  }

  /// Copy with one cell overwritten; parameters are not re-validated so that
  /// adversarial fields can be built for the axiom checker.
  CoefficientField with_cell(CellIndex c, double lambda, double mu = 0.0) const;

  bool operator==(const CoefficientField& other) const;

 private:
  FluxParams params_;
  double macro_radius_;
  std::uint64_t seed_;
  int cells_per_axis_;
  int cell_origin_;
  std::vector<double> lambda_;
  std::vector<double> mu_;
};

/// Draws an iid checkerboard field. Deterministic in (seed, R, params).
CoefficientField sample_environment(std::uint64_t seed, double macro_radius,
                                    const FluxParams& params);

/// a(xi, x); throws DomainError if x is outside [-R, R]^2.
Vec2 evaluate_flux(const CoefficientField& field, const Vec2& xi, const Point& x);

struct AxiomReport {
  double worst_lipschitz_ratio = 0.0;
  double worst_monotonicity_ratio = 0.0;
  CellIndex worst_lipschitz_cell;
  CellIndex worst_monotonicity_cell;
  std::size_t samples = 0;
  double lambda_ellipticity = 1.0;

  bool lipschitz_ok() const;
  bool monotone_ok() const;
  bool passed() const { return lipschitz_ok() && monotone_ok(); }
};

/// Samples (xi, eta, x) with log-uniform magnitudes over nine decades and
/// records the extreme ratios. Sample k is placed in cell k mod cell_count,
/// so every cell is visited once n_samples >= cell_count.
AxiomReport check_flux_axioms(const CoefficientField& field, std::size_t n_samples,
                              std::uint64_t rng_seed);

/// Text format, see README. Values are written with 17 significant digits so
/// a read-back field compares bit-identical.
void write_field(std::ostream& out, const CoefficientField& field);
CoefficientField read_field(std::istream& in);

}  // namespace czlab
