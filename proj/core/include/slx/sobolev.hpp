#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slx/potential.hpp"

namespace slx {

/// A real-weighted Dirac mass; the weight may be negative.
struct SignedDelta {
  double site = 0.0;
  double weight = 0.0;
};

/// Signed step function on [0, 1] plus signed point masses. Used for
/// differences of potentials in the negative Sobolev norm.
class SignedMeasure {
 public:
  SignedMeasure(std::vector<double> breakpoints, std::vector<double> heights,
                std::vector<SignedDelta> deltas = {});

  static SignedMeasure zero();
  static SignedMeasure point_mass(double site, double weight = 1.0);
  static SignedMeasure from(const StepPotential& q);
  static SignedMeasure from(const Potential& q);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> heights() const noexcept { return heights_; }
  std::span<const SignedDelta> deltas() const noexcept { return deltas_; }
  std::size_t cells() const noexcept { return heights_.size(); }

  SignedMeasure scaled(double factor) const;

  friend SignedMeasure operator+(const SignedMeasure& a, const SignedMeasure& b);
  friend SignedMeasure operator-(const SignedMeasure& a, const SignedMeasure& b);

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
  std::vector<SignedDelta> deltas_;  // sorted by site, distinct sites
};

/// Values z(i / N), i = 0..N, of a continuous piecewise-linear function on a
/// uniform grid with N >= 2 intervals.
class SampledFunction {
 public:
  explicit SampledFunction(std::vector<double> values);

  template <class F>
  static SampledFunction sample(F&& f, std::size_t intervals) {
    std::vector<double> v(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
      v[i] = f(static_cast<double>(i) / static_cast<double>(intervals));
    return SampledFunction(std::move(v));
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t intervals() const noexcept { return values_.size() - 1; }
  /// Linear interpolation.
  double operator()(double x) const;

 private:
  std::vector<double> values_;
};

/// sqrt(int z'^2 + int z^2), exact for the piecewise-linear interpolant.
double w1_norm(const SampledFunction& z);

/// int f z dx + sum w z(site), exact for piecewise-linear z.
double pairing(const SignedMeasure& f, const SampledFunction& z);

/// Dual norm of f restricted to the P1 space on a uniform grid of `grid_n`
/// intervals: sqrt(<f, u>) where u is the Riesz representer solving
/// int u'v' + int uv = <f, v> for every P1 test function v. Nondecreasing
/// under grid refinement and bounded by the true norm.
double wminus1_norm(const SignedMeasure& f, std::size_t grid_n);

double wminus1_dist(const SignedMeasure& f, const SignedMeasure& g, std::size_t grid_n);

/// Riesz representer values on the grid (grid_n + 1 nodes).
std::vector<double> riesz_representer(const SignedMeasure& f, std::size_t grid_n);

}  // namespace slx
