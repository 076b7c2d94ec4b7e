#include "czlab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "czlab/errors.hpp"

namespace czlab {

namespace {

bool balls_disjoint(const Ball& a, const Ball& b) {
  return distance(a.center, b.center) > a.radius + b.radius;
}

}  // namespace

std::vector<std::size_t> vitali_select(std::span<const Ball> balls) {
  std::vector<std::size_t> order(balls.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return balls[a].radius > balls[b].radius;
  });
  std::vector<std::size_t> kept;
  for (std::size_t i : order) {
    if (!(balls[i].radius > 0.0)) throw ValidationError("ball radii must be positive");
    bool free = true;
    for (std::size_t k : kept) {
      if (!balls_disjoint(balls[i], balls[k])) {
        free = false;
        break;
      }
    }
    if (free) kept.push_back(i);
  }
  return kept;
}

VitaliCheck verify_vitali(std::span<const Ball> balls, std::span<const std::size_t> kept) {
  VitaliCheck check;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      if (!balls_disjoint(balls[kept[a]], balls[kept[b]])) check.disjoint = false;
    }
  }
  for (const Ball& ball : balls) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k : kept) {
      const Ball& big = balls[k];
      best = std::min(best, (distance(ball.center, big.center) + ball.radius) / big.radius);
    }
    check.worst_dilation = std::max(check.worst_dilation, best);
    if (!(best <= 5.0 * (1.0 + 1e-12))) check.covered = false;
  }
  return check;
}

namespace {

template <typename Visit>
void for_nodes_near(const Grid& grid, const Point& x, double radius, Visit visit) {
  const int n = grid.nodes_per_axis();
  const int i0 = std::max(0, static_cast<int>(std::floor(grid.lattice_coordinate(x[0] - radius))));
  const int i1 = std::min(n - 1, static_cast<int>(std::ceil(grid.lattice_coordinate(x[0] + radius))));
  const int j0 = std::max(0, static_cast<int>(std::floor(grid.lattice_coordinate(x[1] - radius))));
  const int j1 = std::min(n - 1, static_cast<int>(std::ceil(grid.lattice_coordinate(x[1] + radius))));
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) visit(grid.index(i, j));
  }
}

}  // namespace

double distance_to_set(const Grid& grid, const LevelSet& set, const Point& x, double limit) {
  double best = std::numeric_limits<double>::infinity();
  for_nodes_near(grid, x, limit, [&](std::size_t k) {
    if (!set.contains(k)) return;
    const double d = distance(grid.node(k), x);
    if (d <= limit) best = std::min(best, d);
  });
  return best;
}

ExitBall exit_ball(const Grid& grid, const Point& x, const LevelSet& set, double macro_radius,
                   const ExitBallOptions& options) {
  const double cap = options.radius_cap > 0.0 ? options.radius_cap : macro_radius / 40.0;
  if (!(options.epsilon > 0.0)) throw ValidationError("exit-ball epsilon must be positive");
  const double norm_x = std::hypot(x[0], x[1]);
  if (norm_x > 0.5 * macro_radius * (1.0 + 1e-12)) {
    throw ContractError("exit_ball: x must lie in B_{R/2}");
  }
  if (distance_to_set(grid, set, x, 2.0) <= 2.0) {
    throw ContractError("exit_ball: dist(x, A(t)) <= 2");
  }
  const Vec2 e = norm_x > 0.0 ? Vec2{x[0] / norm_x, x[1] / norm_x} : Vec2{1.0, 0.0};

  // z enters B_r(x - r e) once r >= |z - x|^2 / (2 e.(x - z)); such z lie
  // within 2r of x.
  double r_min = std::numeric_limits<double>::infinity();
  for_nodes_near(grid, x, 2.0 * cap, [&](std::size_t k) {
    if (!set.contains(k)) return;
    const Point z = grid.node(k);
    const Vec2 d{x[0] - z[0], x[1] - z[1]};
    const double along = dot(e, d);
    if (along <= 0.0) return;
    r_min = std::min(r_min, dot(d, d) / (2.0 * along));
  });
  const double r0 = std::max(1.0, r_min);
  const double r = (1.0 + options.epsilon) * r0;
  if (!std::isfinite(r_min) || r > cap) {
    throw GeometryExhausted("exit ball radius would exceed the cap " + std::to_string(cap));
  }
  const Ball ball{{x[0] - r * e[0], x[1] - r * e[1]}, r};

  // postconditions
  const Ball half{ball.center, 0.5 * r};
  bool touches = false;
  bool half_clear = true;
  for_nodes_near(grid, ball.center, r, [&](std::size_t k) {
    if (!set.contains(k)) return;
    const Point z = grid.node(k);
    if (ball.contains(z)) touches = true;
    if (half.contains(z)) half_clear = false;
  });
  if (!ball.contains(x)) throw ContractError("exit_ball: x not in B_r(y)");
  if (!touches) throw ContractError("exit_ball: B_r(y) misses A(t)");
  if (!half_clear) throw ContractError("exit_ball: B_{r/2}(y) meets A(t)");
  if (std::hypot(half.center[0], half.center[1]) + half.radius >
      0.5 * macro_radius * (1.0 + 1e-12)) {
    throw ContractError("exit_ball: B_{r/2}(y) leaves B_{R/2}");
  }
  return {ball, r0};
}

}  // namespace czlab
