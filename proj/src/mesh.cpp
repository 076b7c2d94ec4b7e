#include "czlab/mesh.hpp"

#include "czlab/errors.hpp"

namespace czlab {

Mesh::Mesh(const Grid& grid) : grid_(grid), squares_(grid.nodes_per_axis() - 1) {}

std::array<std::size_t, 3> Mesh::nodes(std::size_t e) const {
  const std::size_t square = e / 2;
  const int i = static_cast<int>(square % squares_);
  const int j = static_cast<int>(square / squares_);
  const std::size_t a = grid_.index(i, j);
  const std::size_t c = grid_.index(i + 1, j + 1);
  if (e % 2 == 0) return {a, grid_.index(i + 1, j), c};
  return {a, c, grid_.index(i, j + 1)};
}

Point Mesh::barycenter(std::size_t e) const {
  const std::size_t square = e / 2;
  const int i = static_cast<int>(square % squares_);
  const int j = static_cast<int>(square / squares_);
  const double d = grid_.spacing();
  const Point a = grid_.node(i, j);
  if (e % 2 == 0) return {a[0] + 2.0 * d / 3.0, a[1] + d / 3.0};
  return {a[0] + d / 3.0, a[1] + 2.0 * d / 3.0};
}

const std::array<Vec2, 3>& Mesh::scaled_shape_gradients(int type) {
  static const std::array<Vec2, 3> lower{{{-1.0, 0.0}, {1.0, -1.0}, {0.0, 1.0}}};
  static const std::array<Vec2, 3> upper{{{0.0, -1.0}, {1.0, 0.0}, {-1.0, 1.0}}};
  return type == 0 ? lower : upper;
}

Vec2 Mesh::shape_gradient(std::size_t e, int local) const {
  const Vec2& g = scaled_shape_gradients(static_cast<int>(e % 2))[local];
  return {g[0] / grid_.spacing(), g[1] / grid_.spacing()};
}

Vec2 Mesh::gradient(std::size_t e, std::span<const double> u) const {
  const auto n = nodes(e);
  const double inv = 1.0 / grid_.spacing();
  if (e % 2 == 0) return {(u[n[1]] - u[n[0]]) * inv, (u[n[2]] - u[n[1]]) * inv};
  return {(u[n[1]] - u[n[2]]) * inv, (u[n[2]] - u[n[0]]) * inv};
}

VectorField::VectorField(const Grid& grid, Vec2 fill)
    : grid_(grid), values_(Mesh(grid).element_count(), fill) {}

VectorField::VectorField(const Grid& grid, std::vector<Vec2> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != Mesh(grid_).element_count()) {
    throw ValidationError("vector field size does not match the mesh");
  }
}

namespace {

ScalarField nodal_mean(const Mesh& mesh, std::span<const double> per_element) {
  const Grid& grid = mesh.grid();
  std::vector<double> sum(grid.node_count(), 0.0);
  std::vector<int> count(grid.node_count(), 0);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    for (std::size_t k : mesh.nodes(e)) {
      sum[k] += per_element[e];
      ++count[k];
    }
  }
  for (std::size_t k = 0; k < sum.size(); ++k) {
    if (count[k] > 0) sum[k] /= count[k];
  }
  return ScalarField(grid, std::move(sum));
}

}  // namespace

ScalarField VectorField::squared_density() const {
  const Mesh mesh(grid_);
  std::vector<double> sq(values_.size());
  for (std::size_t e = 0; e < values_.size(); ++e) sq[e] = dot(values_[e], values_[e]);
  return nodal_mean(mesh, sq);
}

VectorField gradient_field(const ScalarField& u) {
  const Mesh mesh(u.grid());
  std::vector<Vec2> g(mesh.element_count());
  for (std::size_t e = 0; e < g.size(); ++e) g[e] = mesh.gradient(e, u.values());
  return VectorField(u.grid(), std::move(g));
}

ScalarField energy_density(const ScalarField& u) {
  return gradient_field(u).squared_density();
}

}  // namespace czlab
