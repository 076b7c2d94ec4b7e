#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "czlab/flux.hpp"

namespace czlab {

/// Closed Euclidean ball. Node-center inclusion uses a 1e-12 relative slack
/// so that radii produced by floating arithmetic (2^{j/4} ladders) do not
/// drop lattice points that sit exactly on the sphere.
struct Ball {
  Point center{0.0, 0.0};
  double radius = 0.0;

  bool contains(const Point& p) const {
    const double dx = p[0] - center[0];
    const double dy = p[1] - center[1];
    return dx * dx + dy * dy <= radius * radius * (1.0 + 1e-12);
  }
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

/// Uniform node grid on [-R, R]^2 with spacing delta, delta in {1, 1/2, 1/4, 1/8}.
class Grid {
 public:
  Grid(double macro_radius, double spacing = 0.25, int dimension = 2);

  double macro_radius() const { return macro_radius_; }
  double spacing() const { return spacing_; }
  int dimension() const { return 2; }
  int nodes_per_axis() const { return n_; }
  std::size_t node_count() const { return static_cast<std::size_t>(n_) * n_; }
  /// Measure carried by one node (delta^d).
  double node_measure() const { return spacing_ * spacing_; }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * n_ + i; }
  int column(std::size_t k) const { return static_cast<int>(k % n_); }
  int row(std::size_t k) const { return static_cast<int>(k / n_); }
  double coordinate(int i) const { return -macro_radius_ + i * spacing_; }
  Point node(int i, int j) const { return {coordinate(i), coordinate(j)}; }
  Point node(std::size_t k) const { return node(column(k), row(k)); }

  /// Lattice coordinate of a point (fractional).
  double lattice_coordinate(double x) const { return (x + macro_radius_) / spacing_; }

  /// Nodes of the grid lying in the ball, in increasing index order.
  std::vector<std::size_t> nodes_in(const Ball& ball) const;
  /// Number of points of the infinite lattice (extending the grid) in the ball.
  std::size_t lattice_count(const Ball& ball) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.macro_radius_ == b.macro_radius_ && a.spacing_ == b.spacing_;
  }

 private:
  double macro_radius_;
  double spacing_;
  int n_;
};

/// Nodal scalar field. Values outside the optional mask are held at zero,
/// which is the zero extension used by every average in this module.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }

  bool has_mask() const { return !mask_.empty(); }
  bool in_mask(std::size_t k) const { return mask_.empty() || mask_[k] != 0; }
  /// Copy restricted to the ball: values outside are zeroed and masked off.
  ScalarField masked(const Ball& ball) const;

  /// Throws DomainError if any value on the mask is not finite.
  void check_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::vector<std::uint8_t> mask_;
};

struct NormSpec {
  double exponent_s = 2.0;
  double coarsening_h = 0.0;
  Ball region;
  /// true: the averaged norm (divide by |U|); false: the plain integral.
  bool normalized = true;
};

struct LevelSet {
  double threshold = 0.0;
  Ball region;
  /// One flag per grid node; only nodes inside the region can be set.
  std::vector<std::uint8_t> indicator;
  std::size_t count = 0;
  double measure = 0.0;

  bool contains(std::size_t k) const { return indicator[k] != 0; }
};

/// Mean of |phi| over the lattice points within `radius` of `center`.
/// Points outside the grid count in the denominator with value zero.
double disc_average(const ScalarField& phi, const Point& center, double radius);

/// Coarsened L^s norm: s-th root of the node-sum (times delta^d) or node-mean
/// over U of (disc average of |phi| at scale h)^s. h = 0 is pointwise.
double coarsened_norm(const ScalarField& phi, const NormSpec& spec);

/// Radius ladder r_j = max(h, delta) rho^j, stopping at the first radius that
/// reaches the box diameter.
std::vector<double> maximal_ladder(const Grid& grid, double coarsening_h, double ladder_ratio);

inline constexpr double kDefaultLadderRatio = 1.189207115002721;  // 2^{1/4}

/// Coarsened maximal function over the radius ladder. The returned field
/// bounds the supremum over all radii >= max(h, delta) from below, and
/// ladder_ratio^2 times it bounds that supremum from above.
ScalarField maximal_fn(const ScalarField& phi, double coarsening_h,
                       double ladder_ratio = kDefaultLadderRatio);

/// {x in region : phi(x) <= t}.
LevelSet sublevel_set(const ScalarField& phi, double t, const Ball& region);

/// Disc sums at node centers via per-row prefix sums. Exact up to rounding:
/// sums the same node set as direct enumeration.
class DiscSummer {
 public:
  explicit DiscSummer(const ScalarField& phi);

  /// Row half-widths (in nodes) of the lattice disc of the given radius.
  static std::vector<int> half_widths(double radius_in_nodes);
  /// Node count of the lattice disc with these half-widths.
  static std::size_t disc_count(std::span<const int> half_widths);

  double sum(int ci, int cj, std::span<const int> half_widths) const;

 private:
  int n_;
  std::vector<double> prefix_;  // n rows of n+1 partial sums of |phi|
};

/// Text export: header + row-major values (j outer).
void write_grid_text(std::ostream& out, const ScalarField& field);
ScalarField read_grid_text(std::istream& in);

}  // namespace czlab
