#include <algorithm>
#include <cmath>

#include "czlab/errors.hpp"
#include "czlab/lattice.hpp"

namespace czlab {

std::vector<double> maximal_ladder(const Grid& grid, double coarsening_h, double ladder_ratio) {
  if (!(ladder_ratio > 1.0)) throw ValidationError("ladder_ratio must exceed 1");
  if (!(coarsening_h >= 0.0)) throw ValidationError("coarsening must be >= 0");
  const double base = std::max(coarsening_h, grid.spacing());
  const double diameter = 2.0 * std::sqrt(2.0) * grid.macro_radius();
  std::vector<double> radii;
  for (int j = 0;; ++j) {
    const double r = base * std::pow(ladder_ratio, j);
    radii.push_back(r);
    // Past the diameter every disc around a grid node holds the whole box,
    // so larger radii only lower the average.
    if (r >= diameter) break;
  }
  return radii;
}

ScalarField maximal_fn(const ScalarField& phi, double coarsening_h, double ladder_ratio) {
  const Grid& grid = phi.grid();
  const std::vector<double> radii = maximal_ladder(grid, coarsening_h, ladder_ratio);

  std::vector<std::vector<int>> widths;
  std::vector<double> counts;
  widths.reserve(radii.size());
  for (double r : radii) {
    widths.push_back(DiscSummer::half_widths(r / grid.spacing()));
    counts.push_back(static_cast<double>(DiscSummer::disc_count(widths.back())));
  }

  const DiscSummer summer(phi);
  ScalarField out(grid);
  const int n = grid.nodes_per_axis();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double best = 0.0;
      for (std::size_t r = 0; r < radii.size(); ++r) {
        best = std::max(best, summer.sum(i, j, widths[r]) / counts[r]);
      }
      out[grid.index(i, j)] = best;
    }
  }
  return out;
}

}  // namespace czlab
