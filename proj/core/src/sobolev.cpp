#include "slx/sobolev.hpp"

#include <algorithm>
#include <cmath>

#include "slx/errors.hpp"
#include "slx/tridiagonal.hpp"

namespace slx {

namespace {

std::vector<SignedDelta> merge_deltas(std::vector<SignedDelta> deltas) {
  std::stable_sort(deltas.begin(), deltas.end(),
                   [](const auto& a, const auto& b) { return a.site < b.site; });
  std::vector<SignedDelta> out;
  for (const auto& d : deltas) {
    if (!out.empty() && out.back().site == d.site)
      out.back().weight += d.weight;
    else
      out.push_back(d);
  }
  std::erase_if(out, [](const SignedDelta& d) { return d.weight == 0.0; });
  return out;
}

// Heights of `f` on the cells of `grid`, which refines f's breakpoints.
std::vector<double> heights_on(const SignedMeasure& f, std::span<const double> grid) {
  std::vector<double> h(grid.size() - 1);
  const auto bp = f.breakpoints();
  std::size_t cell = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (cell + 1 < f.cells() && bp[cell + 1] <= grid[i]) ++cell;
    h[i] = f.heights()[cell];
  }
  return h;
}

SignedMeasure combine(const SignedMeasure& a, const SignedMeasure& b, double sign) {
  auto grid = merge_breakpoints(a.breakpoints(), b.breakpoints());
  auto ha = heights_on(a, grid);
  const auto hb = heights_on(b, grid);
  for (std::size_t i = 0; i < ha.size(); ++i) ha[i] += sign * hb[i];
  std::vector<SignedDelta> deltas(a.deltas().begin(), a.deltas().end());
  for (const auto& d : b.deltas()) deltas.push_back({d.site, sign * d.weight});
  return SignedMeasure(std::move(grid), std::move(ha), std::move(deltas));
}

// Element index and local coordinate of x on a uniform grid.
std::pair<std::size_t, double> element_of(double x, std::size_t n) {
  const double scaled = x * static_cast<double>(n);
  const auto e = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(scaled))), n - 1);
  return {e, scaled - static_cast<double>(e)};
}

// <f, phi_i> for the hat functions of a uniform grid with n intervals.
std::vector<double> load_vector(const SignedMeasure& f, std::size_t n) {
  std::vector<double> b(n + 1, 0.0);
  const double h = 1.0 / static_cast<double>(n);
  const auto bp = f.breakpoints();
  for (std::size_t c = 0; c < f.cells(); ++c) {
    const double height = f.heights()[c];
    if (height == 0.0) continue;
    const auto first = element_of(bp[c], n).first;
    for (std::size_t e = first; e < n; ++e) {
      const double xa = static_cast<double>(e) / static_cast<double>(n);
      const double xb = static_cast<double>(e + 1) / static_cast<double>(n);
      if (xa >= bp[c + 1]) break;
      const double us = (std::max(xa, bp[c]) - xa) / h;
      const double ut = (std::min(xb, bp[c + 1]) - xa) / h;
      if (!(ut > us)) continue;
      const double right = height * h * (ut * ut - us * us) / 2.0;
      const double total = height * h * (ut - us);
      b[e] += total - right;
      b[e + 1] += right;
    }
  }
  for (const auto& d : f.deltas()) {
    const auto [e, u] = element_of(d.site, n);
    b[e] += d.weight * (1.0 - u);
    b[e + 1] += d.weight * u;
  }
  return b;
}

// Gram matrix of the hat functions in the W2^1 inner product. Long double:
// the condition number grows like n^2 and reaches 1e9 on the finest grids.
WideSymTridiagonal w1_gram(std::size_t n) {
  using wide = long double;
  const wide h = 1.0L / static_cast<wide>(n);
  WideSymTridiagonal a{std::vector<wide>(n + 1, 0), std::vector<wide>(n, 0)};
  for (std::size_t e = 0; e < n; ++e) {
    a.diag[e] += 1 / h + h / 3;
    a.diag[e + 1] += 1 / h + h / 3;
    a.off[e] += -1 / h + h / 6;
  }
  return a;
}

std::vector<long double> wide_representer(std::size_t grid_n,
                                          const std::vector<double>& b) {
  const std::vector<long double> rhs(b.begin(), b.end());
  return solve_tridiagonal(w1_gram(grid_n), std::span<const long double>(rhs));
}

void require_finite(const SignedMeasure& f) {
  for (double v : f.heights())
    if (!std::isfinite(v)) throw NonFiniteInput("signed measure has a non-finite height");
  for (const auto& d : f.deltas())
    if (!std::isfinite(d.weight)) throw NonFiniteInput("signed measure has a non-finite weight");
}

}  // namespace

SignedMeasure::SignedMeasure(std::vector<double> breakpoints, std::vector<double> heights,
                             std::vector<SignedDelta> deltas)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
  validate_breakpoints(breakpoints_, heights_.size());
  for (const auto& d : deltas) {
    if (!(d.site >= 0.0 && d.site <= 1.0))
      throw ContractError("point mass site must lie in [0, 1]");
  }
  deltas_ = merge_deltas(std::move(deltas));
}

SignedMeasure SignedMeasure::zero() { return SignedMeasure({0.0, 1.0}, {0.0}); }

SignedMeasure SignedMeasure::point_mass(double site, double weight) {
  return SignedMeasure({0.0, 1.0}, {0.0}, {{site, weight}});
}

SignedMeasure SignedMeasure::from(const StepPotential& q) {
  return SignedMeasure({q.breakpoints().begin(), q.breakpoints().end()},
                       {q.heights().begin(), q.heights().end()});
}

SignedMeasure SignedMeasure::from(const Potential& q) {
  std::vector<SignedDelta> deltas;
  for (const auto& d : q.deltas()) deltas.push_back({d.site, d.weight});
  const auto& s = q.step();
  return SignedMeasure({s.breakpoints().begin(), s.breakpoints().end()},
                       {s.heights().begin(), s.heights().end()}, std::move(deltas));
}

SignedMeasure SignedMeasure::scaled(double factor) const {
  std::vector<double> h(heights_);
  for (double& v : h) v *= factor;
  std::vector<SignedDelta> d(deltas_);
  for (auto& v : d) v.weight *= factor;
  return SignedMeasure(breakpoints_, std::move(h), std::move(d));
}

SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b) {
  return combine(a, b, 1.0);
}

SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b) {
  return combine(a, b, -1.0);
}

SampledFunction::SampledFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3) throw ContractError("sampled function needs N >= 2 intervals");
}

double SampledFunction::operator()(double x) const {
  const auto [e, u] = element_of(x, intervals());
  return (1.0 - u) * values_[e] + u * values_[e + 1];
}

double w1_norm(const SampledFunction& z) {
  const auto v = z.values();
  const double h = 1.0 / static_cast<double>(z.intervals());
  double grad = 0.0;
  double l2 = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    grad += d * d / h;
    l2 += h * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
  }
  return std::sqrt(grad + l2);
}

double pairing(const SignedMeasure& f, const SampledFunction& z) {
  const auto grid_n = z.intervals();
  std::vector<double> grid(grid_n + 1);
  for (std::size_t i = 0; i <= grid_n; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(grid_n);
  const auto merged = merge_breakpoints(f.breakpoints(), grid);
  const auto heights = heights_on(f, merged);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    if (heights[i] == 0.0) continue;
    const double s = merged[i];
    const double t = merged[i + 1];
    // z is linear on [s, t]: midpoint rule is exact; evaluate inside the
    // element to avoid picking the neighbouring one.
    sum += heights[i] * (t - s) * z(0.5 * (s + t));
  }
  for (const auto& d : f.deltas()) sum += d.weight * z(d.site);
  return sum;
}

std::vector<double> riesz_representer(const SignedMeasure& f, std::size_t grid_n) {
  if (grid_n < 64) throw ContractError("wminus1_norm needs grid_n >= 64");
  require_finite(f);
  const auto u = wide_representer(grid_n, load_vector(f, grid_n));
  return {u.begin(), u.end()};
}

double wminus1_norm(const SignedMeasure& f, std::size_t grid_n) {
  if (grid_n < 64) throw ContractError("wminus1_norm needs grid_n >= 64");
  require_finite(f);
  const auto b = load_vector(f, grid_n);
  const auto u = wide_representer(grid_n, b);
  long double energy = 0;
  for (std::size_t i = 0; i < b.size(); ++i) energy += b[i] * u[i];
  return static_cast<double>(std::sqrt(std::max(0.0L, energy)));
}

double wminus1_dist(const SignedMeasure& f, const SignedMeasure& g, std::size_t grid_n) {
  return wminus1_norm(f - g, grid_n);
}

}  // namespace slx
