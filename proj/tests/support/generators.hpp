#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "slx/eigen_solver.hpp"
#include "slx/potential.hpp"
#include "slx/sobolev.hpp"

namespace slx::testing {

using Rng = std::mt19937_64;

inline std::vector<double> random_breakpoints(Rng& rng, int cells) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> bp{0.0, 1.0};
  while (static_cast<int>(bp.size()) < cells + 1) {
    const double x = u(rng);
    if (x <= 0.0 || x >= 1.0) continue;
    if (std::find(bp.begin(), bp.end(), x) == bp.end()) bp.push_back(x);
  }
  std::sort(bp.begin(), bp.end());
  return bp;
}

/// Random step potential with 1..max_cells cells and heights in [lo, hi].
inline StepPotential random_step(Rng& rng, double lo, double hi, int max_cells = 8) {
  std::uniform_int_distribution<int> k(1, max_cells);
  const int cells = k(rng);
  std::uniform_real_distribution<double> h(lo, hi);
  std::vector<double> heights(static_cast<std::size_t>(cells));
  for (double& v : heights) v = h(rng);
  return StepPotential(random_breakpoints(rng, cells), std::move(heights));
}

inline RobinBC random_bc(Rng& rng, double max = 10.0) {
  std::uniform_real_distribution<double> u(0.0, max);
  return RobinBC(u(rng), u(rng));
}

inline SignedMeasure random_measure(Rng& rng, int max_cells = 6, int max_deltas = 3) {
  std::uniform_int_distribution<int> k(1, max_cells);
  std::uniform_int_distribution<int> nd(0, max_deltas);
  std::uniform_real_distribution<double> h(-5.0, 5.0);
  std::uniform_real_distribution<double> site(0.0, 1.0);
  const int cells = k(rng);
  std::vector<double> heights(static_cast<std::size_t>(cells));
  for (double& v : heights) v = h(rng);
  std::vector<SignedDelta> deltas;
  for (int i = nd(rng); i > 0; --i) deltas.push_back({site(rng), h(rng)});
  return SignedMeasure(random_breakpoints(rng, cells), std::move(heights), std::move(deltas));
}

}  // namespace slx::testing
