#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "czlab/lattice.hpp"

namespace czlab {

/// Greedy Vitali selection: balls in decreasing radius order (ties by index)
/// are kept iff disjoint from every kept ball. Returns kept indices in
/// selection order.
std::vector<std::size_t> vitali_select(std::span<const Ball> balls);

struct VitaliCheck {
  bool disjoint = true;
  bool covered = true;
  /// Smallest dilation factor of the kept balls that covers every input.
  double worst_dilation = 0.0;
};

/// O(N^2) brute-force check of pairwise disjointness and 5-dilate coverage.
VitaliCheck verify_vitali(std::span<const Ball> balls, std::span<const std::size_t> kept);

struct ExitBallOptions {
  double epsilon = 1.0 / 16.0;
  /// Largest admissible radius; <= 0 means R/40.
  double radius_cap = 0.0;
};

struct ExitBall {
  Ball ball;
  /// Smallest contact radius r0 >= 1; ball.radius = (1 + epsilon) r0.
  double contact_radius = 0.0;
};

/// Distance from x to the nearest node of the set, searched within `limit`
/// (returns +inf beyond it).
double distance_to_set(const Grid& grid, const LevelSet& set, const Point& x, double limit);

/// Exit ball for x in B_{R/2} with dist(x, A(t)) > 2, where A(t) is the
/// node set of `set`. The centre moves from x towards the origin,
/// y = x - r x/|x| (direction (1, 0) at x = 0). These balls are nested in r,
/// so the contact radius has the closed form min over z in A of
/// |z - x|^2 / (2 e.(x - z)), which is the limit of bisection over r.
/// Postconditions are checked by a node scan and raise ContractError.
ExitBall exit_ball(const Grid& grid, const Point& x, const LevelSet& set, double macro_radius,
                   const ExitBallOptions& options = {});

}  // namespace czlab
