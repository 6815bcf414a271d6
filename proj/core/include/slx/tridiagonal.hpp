#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "slx/errors.hpp"

namespace slx {

/// Symmetric tridiagonal matrix: `diag` of size n, `off` of size n - 1.
template <class T>
struct BasicSymTridiagonal {
  std::vector<T> diag;
  std::vector<T> off;

  std::size_t size() const noexcept { return diag.size(); }
};

using SymTridiagonal = BasicSymTridiagonal<double>;
/// Extended-precision variant for grids where O(h) terms sit next to O(1/h)
/// entries.
using WideSymTridiagonal = BasicSymTridiagonal<long double>;

/// Solves A x = rhs by Thomas elimination. A must be nonsingular with
/// nonvanishing leading minors (true for the SPD systems used here).
template <class T>
std::vector<T> solve_tridiagonal(const BasicSymTridiagonal<T>& a, std::span<const T> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n || a.off.size() + 1 != n)
    throw ContractError("tridiagonal system dimensions do not match");
  std::vector<T> c(n, T(0));
  std::vector<T> x(rhs.begin(), rhs.end());
  T pivot = a.diag[0];
  if (pivot == T(0)) throw SolverError("SingularSystem", "zero pivot in tridiagonal solve");
  x[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = a.off[i - 1] / pivot;
    pivot = a.diag[i] - a.off[i - 1] * c[i - 1];
    if (pivot == T(0)) throw SolverError("SingularSystem", "zero pivot in tridiagonal solve");
    x[i] = (x[i] - a.off[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

inline std::vector<double> solve_tridiagonal(const SymTridiagonal& a,
                                             const std::vector<double>& rhs) {
  return solve_tridiagonal(a, std::span<const double>(rhs));
}

/// Number of eigenvalues of the pencil (k, m) strictly below sigma, from the
/// inertia of k - sigma * m computed in long double. `m` must be positive
/// definite.
template <class T>
std::size_t count_eigenvalues_below(const BasicSymTridiagonal<T>& k,
                                    const BasicSymTridiagonal<T>& m, double sigma) {
  using wide = long double;
  constexpr wide tiny = std::numeric_limits<wide>::min() / std::numeric_limits<wide>::epsilon();
  const wide s = sigma;
  std::size_t negatives = 0;
  wide d = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const wide a = static_cast<wide>(k.diag[i]) - s * static_cast<wide>(m.diag[i]);
    if (i == 0) {
      d = a;
    } else {
      const wide b = static_cast<wide>(k.off[i - 1]) - s * static_cast<wide>(m.off[i - 1]);
      d = a - b * b / d;
    }
    if (std::abs(d) < tiny) d = -tiny;
    if (d < 0) ++negatives;
  }
  return negatives;
}

/// Smallest eigenvalue of the pencil (k, m) by bisection on the inertia count.
/// Requires count(lo) == 0 and count(hi) >= 1.
template <class T>
double smallest_pencil_eigenvalue(const BasicSymTridiagonal<T>& k,
                                  const BasicSymTridiagonal<T>& m, double lo, double hi,
                                  double abs_tol) {
  if (count_eigenvalues_below(k, m, lo) != 0 || count_eigenvalues_below(k, m, hi) == 0)
    throw BracketNotFound("pencil bisection interval does not isolate the smallest eigenvalue");
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_eigenvalues_below(k, m, mid) == 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace slx
