#include "czlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

Grid::Grid(double macro_radius, double spacing, int dimension)
    : macro_radius_(macro_radius), spacing_(spacing), n_(0) {
  if (dimension != 2) throw ValidationError("only d = 2 grids are supported");
  if (!(spacing == 1.0 || spacing == 0.5 || spacing == 0.25 || spacing == 0.125)) {
    throw ValidationError("grid spacing must be one of 1, 1/2, 1/4, 1/8");
  }
  if (!(macro_radius > 0.0)) throw ValidationError("macro_radius must be positive");
  const double intervals = 2.0 * macro_radius / spacing;
  if (intervals != std::floor(intervals)) {
    throw ValidationError("2R / spacing must be an integer");
  }
  n_ = static_cast<int>(intervals) + 1;
}

namespace {

struct IndexRange {
  int lo;
  int hi;  // inclusive
};

IndexRange lattice_range(const Grid& grid, double center, double radius) {
  return {static_cast<int>(std::ceil(grid.lattice_coordinate(center - radius) - 1e-9)),
          static_cast<int>(std::floor(grid.lattice_coordinate(center + radius) + 1e-9))};
}

}  // namespace

std::vector<std::size_t> Grid::nodes_in(const Ball& ball) const {
  std::vector<std::size_t> out;
  IndexRange rx = lattice_range(*this, ball.center[0], ball.radius);
  IndexRange ry = lattice_range(*this, ball.center[1], ball.radius);
  rx.lo = std::max(rx.lo, 0);
  ry.lo = std::max(ry.lo, 0);
  rx.hi = std::min(rx.hi, n_ - 1);
  ry.hi = std::min(ry.hi, n_ - 1);
  for (int j = ry.lo; j <= ry.hi; ++j) {
    for (int i = rx.lo; i <= rx.hi; ++i) {
      if (ball.contains(node(i, j))) out.push_back(index(i, j));
    }
  }
  return out;
}

std::size_t Grid::lattice_count(const Ball& ball) const {
  const IndexRange rx = lattice_range(*this, ball.center[0], ball.radius);
  const IndexRange ry = lattice_range(*this, ball.center[1], ball.radius);
  std::size_t count = 0;
  for (int j = ry.lo; j <= ry.hi; ++j) {
    for (int i = rx.lo; i <= rx.hi; ++i) {
      if (ball.contains(node(i, j))) ++count;
    }
  }
  return count;
}

ScalarField::ScalarField(const Grid& grid, double fill)
    : grid_(grid), values_(grid.node_count(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw ValidationError("value array does not match the grid");
  }
}

ScalarField ScalarField::masked(const Ball& ball) const {
  ScalarField out(grid_);
  out.mask_.assign(grid_.node_count(), 0);
  for (std::size_t k : grid_.nodes_in(ball)) {
    if (!in_mask(k)) continue;
    out.mask_[k] = 1;
    out.values_[k] = values_[k];
  }
  return out;
}

void ScalarField::check_finite() const {
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (in_mask(k) && !std::isfinite(values_[k])) {
      throw DomainError("non-finite value at node " + std::to_string(k));
    }
  }
}

double disc_average(const ScalarField& phi, const Point& center, double radius) {
  const Grid& grid = phi.grid();
  if (!(radius >= grid.spacing())) {
    throw ResolutionError("disc radius below grid spacing");
  }
  const Ball ball{center, radius};
  const IndexRange rx = lattice_range(grid, center[0], radius);
  const IndexRange ry = lattice_range(grid, center[1], radius);
  const int n = grid.nodes_per_axis();
  std::size_t count = 0;
  double sum = 0.0;
  for (int j = ry.lo; j <= ry.hi; ++j) {
    for (int i = rx.lo; i <= rx.hi; ++i) {
      if (!ball.contains(grid.node(i, j))) continue;
      ++count;
      if (i >= 0 && j >= 0 && i < n && j < n) sum += std::abs(phi.at(i, j));
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

DiscSummer::DiscSummer(const ScalarField& phi)
    : n_(phi.grid().nodes_per_axis()),
      prefix_(static_cast<std::size_t>(n_) * (n_ + 1), 0.0) {
  for (int j = 0; j < n_; ++j) {
    double* row = &prefix_[static_cast<std::size_t>(j) * (n_ + 1)];
    double acc = 0.0;
    row[0] = 0.0;
    for (int i = 0; i < n_; ++i) {
      acc += std::abs(phi.at(i, j));
      row[i + 1] = acc;
    }
  }
}

std::vector<int> DiscSummer::half_widths(double radius_in_nodes) {
  const double limit = radius_in_nodes * radius_in_nodes * (1.0 + 1e-12);
  int outer = static_cast<int>(std::floor(std::sqrt(limit)));
  while (static_cast<double>(outer + 1) * (outer + 1) <= limit) ++outer;
  while (static_cast<double>(outer) * outer > limit) --outer;
  std::vector<int> widths(2 * outer + 1);
  for (int dy = -outer; dy <= outer; ++dy) {
    const double rest = limit - static_cast<double>(dy) * dy;
    int w = static_cast<int>(std::floor(std::sqrt(rest)));
    while (static_cast<double>(w + 1) * (w + 1) <= rest) ++w;
    while (w > 0 && static_cast<double>(w) * w > rest) --w;
    widths[dy + outer] = w;
  }
  return widths;
}

std::size_t DiscSummer::disc_count(std::span<const int> half_widths) {
  std::size_t count = 0;
  for (int w : half_widths) count += 2 * static_cast<std::size_t>(w) + 1;
  return count;
}

double DiscSummer::sum(int ci, int cj, std::span<const int> half_widths) const {
  const int outer = static_cast<int>(half_widths.size() / 2);
  const int dy_lo = std::max(-outer, -cj);
  const int dy_hi = std::min(outer, n_ - 1 - cj);
  double total = 0.0;
  for (int dy = dy_lo; dy <= dy_hi; ++dy) {
    const int w = half_widths[dy + outer];
    const int i0 = std::max(ci - w, 0);
    const int i1 = std::min(ci + w, n_ - 1);
    if (i0 > i1) continue;
    const double* row = &prefix_[static_cast<std::size_t>(cj + dy) * (n_ + 1)];
    total += row[i1 + 1] - row[i0];
  }
  return total;
}

double coarsened_norm(const ScalarField& phi, const NormSpec& spec) {
  if (!(spec.exponent_s >= 1.0)) throw ValidationError("norm exponent must be >= 1");
  if (!(spec.coarsening_h >= 0.0)) throw ValidationError("coarsening must be >= 0");
  const Grid& grid = phi.grid();
  const std::vector<std::size_t> nodes = grid.nodes_in(spec.region);
  if (nodes.empty()) throw DomainError("norm region contains no grid nodes");
  const double h = spec.coarsening_h;
  if (h > 0.0 && h < grid.spacing()) {
    throw ResolutionError("coarsening scale below grid spacing");
  }

  double total = 0.0;
  if (h == 0.0) {
    for (std::size_t k : nodes) total += std::pow(std::abs(phi[k]), spec.exponent_s);
  } else {
    const DiscSummer summer(phi);
    const std::vector<int> widths = DiscSummer::half_widths(h / grid.spacing());
    const double count = static_cast<double>(DiscSummer::disc_count(widths));
    for (std::size_t k : nodes) {
      const double avg = summer.sum(grid.column(k), grid.row(k), widths) / count;
      total += std::pow(avg, spec.exponent_s);
    }
  }
  const double scaled = spec.normalized ? total / static_cast<double>(nodes.size())
                                        : total * grid.node_measure();
  return std::pow(scaled, 1.0 / spec.exponent_s);
}

LevelSet sublevel_set(const ScalarField& phi, double t, const Ball& region) {
  const Grid& grid = phi.grid();
  LevelSet set;
  set.threshold = t;
  set.region = region;
  set.indicator.assign(grid.node_count(), 0);
  for (std::size_t k : grid.nodes_in(region)) {
    if (phi[k] <= t) {
      set.indicator[k] = 1;
      ++set.count;
    }
  }
  set.measure = static_cast<double>(set.count) * grid.node_measure();
  return set;
}

void write_grid_text(std::ostream& out, const ScalarField& field) {
  const Grid& grid = field.grid();
  const auto precision = out.precision();
  out.precision(17);
  out << "czlab-grid 1\n";
  out << "macro_radius " << grid.macro_radius() << "\n";
  out << "spacing " << grid.spacing() << "\n";
  out << "nodes_per_axis " << grid.nodes_per_axis() << "\n";
  out << "values\n";
  const int n = grid.nodes_per_axis();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i > 0) out << ' ';
      out << field.at(i, j);
    }
    out << '\n';
  }
  out.precision(precision);
}

ScalarField read_grid_text(std::istream& in) {
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "czlab-grid" || version != 1) {
    throw IoError("not a czlab-grid v1 file");
  }
  double radius = 0.0;
  double spacing = 0.0;
  int n = 0;
  std::string key;
  while (in >> key && key != "values") {
    if (key == "macro_radius") in >> radius;
    else if (key == "spacing") in >> spacing;
    else if (key == "nodes_per_axis") in >> n;
    else throw IoError("unknown grid header key '" + key + "'");
  }
  const Grid grid(radius, spacing);
  if (grid.nodes_per_axis() != n) throw IoError("node count does not match header");
  std::vector<double> values(grid.node_count());
  for (double& v : values) {
    if (!(in >> v)) throw IoError("truncated grid values");
  }
  return ScalarField(grid, std::move(values));
}

}  // namespace czlab
