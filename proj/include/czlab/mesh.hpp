#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "czlab/lattice.hpp"

namespace czlab {

/// P1 triangulation of a Grid. Square (i, j) with lower-left node A = (i, j)
/// is cut along the diagonal A-C into
///   lower (type 0): A, B = (i+1, j), C = (i+1, j+1)
///   upper (type 1): A, C, D = (i, j+1).
/// Element id e = 2 (j N + i) + type, N = squares per axis.
class Mesh {
 public:
  explicit Mesh(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int squares_per_axis() const { return squares_; }
  std::size_t element_count() const { return 2 * static_cast<std::size_t>(squares_) * squares_; }
  double element_area() const { return 0.5 * grid_.spacing() * grid_.spacing(); }

  std::array<std::size_t, 3> nodes(std::size_t e) const;
  Point barycenter(std::size_t e) const;

  /// delta * grad(phi_a) for local vertex a of an element of the given type.
  static const std::array<Vec2, 3>& scaled_shape_gradients(int type);
  Vec2 shape_gradient(std::size_t e, int local) const;

  /// Constant gradient of the interpolant of nodal values u on element e.
  Vec2 gradient(std::size_t e, std::span<const double> u) const;

 private:
  Grid grid_;
  int squares_;
};

/// Per-element constant vector field (the right side f, or a gradient).
class VectorField {
 public:
  explicit VectorField(const Grid& grid, Vec2 fill = {0.0, 0.0});
  VectorField(const Grid& grid, std::vector<Vec2> values);

  const Grid& grid() const { return grid_; }
  std::span<const Vec2> values() const { return values_; }
  std::span<Vec2> values() { return values_; }
  const Vec2& operator[](std::size_t e) const { return values_[e]; }
  Vec2& operator[](std::size_t e) { return values_[e]; }
  std::size_t size() const { return values_.size(); }

  /// Nodal density of |v|^2: mean over the elements sharing each node.
  ScalarField squared_density() const;

 private:
  Grid grid_;
  std::vector<Vec2> values_;
};

/// Element gradients of a nodal field.
VectorField gradient_field(const ScalarField& u);

/// Nodal |grad u|^2, averaged over the adjacent triangles.
ScalarField energy_density(const ScalarField& u);

}  // namespace czlab
