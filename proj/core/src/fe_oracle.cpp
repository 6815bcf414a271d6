#include <algorithm>
#include <cmath>

#include "slx/eigen_solver.hpp"
#include "slx/errors.hpp"
#include "slx/tridiagonal.hpp"

// P1 finite elements for the quadratic form of the Robin problem. Kept apart
// from the shooting code: it shares nothing with it but the lower bound.

namespace slx {

double lambda1_fd(const Potential& q, const RobinBC& bc, int n_nodes) {
  if (n_nodes < 32) throw ContractError("lambda1_fd needs at least 32 nodes");
  const auto n = static_cast<std::size_t>(n_nodes);
  const std::size_t elements = n - 1;
  using wide = long double;
  const double h = 1.0 / static_cast<double>(elements);
  const wide hw = 1.0L / static_cast<wide>(elements);

  // Assembled in long double: the O(h) potential terms would otherwise be
  // rounded away against the O(1/h) stiffness entries.
  WideSymTridiagonal k{std::vector<wide>(n, 0), std::vector<wide>(elements, 0)};
  WideSymTridiagonal m{std::vector<wide>(n, 0), std::vector<wide>(elements, 0)};
  for (std::size_t e = 0; e < elements; ++e) {
    k.diag[e] += 1 / hw;
    k.diag[e + 1] += 1 / hw;
    k.off[e] -= 1 / hw;
    m.diag[e] += hw / 3;
    m.diag[e + 1] += hw / 3;
    m.off[e] += hw / 6;
  }
  k.diag.front() += bc.k0sq;
  k.diag.back() += bc.k1sq;

  // Exact integral of q * phi_i * phi_j, splitting elements at breakpoints.
  const auto& step = q.step();
  const auto bp = step.breakpoints();
  auto left_sq = [](wide u) { return -(1 - u) * (1 - u) * (1 - u) / 3; };
  auto cross = [](wide u) { return u * u / 2 - u * u * u / 3; };
  auto right_sq = [](wide u) { return u * u * u / 3; };
  std::size_t cell = 0;
  for (std::size_t e = 0; e < elements; ++e) {
    const double xa = static_cast<double>(e) / static_cast<double>(elements);
    const double xb = static_cast<double>(e + 1) / static_cast<double>(elements);
    while (cell + 1 < step.cells() && bp[cell + 1] <= xa) ++cell;
    for (std::size_t c = cell; c < step.cells() && bp[c] < xb; ++c) {
      const wide height = step.heights()[c];
      if (height == 0) continue;
      const wide us = (std::max(xa, bp[c]) - xa) / h;
      const wide ut = (std::min(xb, bp[c + 1]) - xa) / h;
      if (!(ut > us)) continue;
      k.diag[e] -= height * hw * (left_sq(ut) - left_sq(us));
      k.diag[e + 1] -= height * hw * (right_sq(ut) - right_sq(us));
      k.off[e] -= height * hw * (cross(ut) - cross(us));
    }
  }
  for (const auto& d : q.deltas()) {
    const auto node = static_cast<std::size_t>(std::lround(d.site * static_cast<double>(elements)));
    k.diag[node] -= d.weight;
  }

  // Galerkin value lies above the true one, which is above the lower bound;
  // the constant vector caps it from above by k0sq + k1sq.
  const double lo = lambda1_lower_bound(q) - 1.0;
  const double hi = bc.k0sq + bc.k1sq + 1.0;
  const double tol = 1e-13 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return smallest_pencil_eigenvalue(k, m, lo, hi, tol);
}

}  // namespace slx
