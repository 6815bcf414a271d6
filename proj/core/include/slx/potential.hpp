#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace slx {

/// Piecewise-constant nonnegative function on [0, 1].
///
/// Cell i is the open interval (breakpoints[i], breakpoints[i+1]) and carries
/// heights[i]. Breakpoints start at 0, end at 1 and are strictly increasing.
class StepPotential {
 public:
  StepPotential(std::vector<double> breakpoints, std::vector<double> heights);

  /// q(x) = value on a single cell.
  static StepPotential constant(double value);
  /// K equal-width cells carrying the given heights.
  static StepPotential uniform(std::span<const double> heights);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> heights() const noexcept { return heights_; }
  std::size_t cells() const noexcept { return heights_.size(); }
  double width(std::size_t cell) const {
    return breakpoints_[cell + 1] - breakpoints_[cell];
  }

  /// Value at x, taking the right cell at interior breakpoints (left at x = 1).
  double operator()(double x) const;

  double min_height() const noexcept;
  double max_height() const noexcept;
  /// Integral over [0, 1].
  double mass() const noexcept;

  /// Every height multiplied by `factor` (factor >= 0).
  StepPotential scaled(double factor) const;

  friend bool operator==(const StepPotential&, const StepPotential&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
};

/// A Dirac mass weight * delta_site.
struct DeltaComponent {
  double site = 0.0;
  double weight = 0.0;

  friend bool operator==(const DeltaComponent&, const DeltaComponent&) = default;
};

/// Step part plus a finite sum of positive Dirac masses. Deltas are kept
/// sorted by site; equal sites are merged by adding their weights.
class Potential {
 public:
  Potential(StepPotential step, std::vector<DeltaComponent> deltas = {});

  const StepPotential& step() const noexcept { return step_; }
  std::span<const DeltaComponent> deltas() const noexcept { return deltas_; }
  bool has_deltas() const noexcept { return !deltas_.empty(); }
  double total_delta_weight() const noexcept;

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  StepPotential step_;
  std::vector<DeltaComponent> deltas_;
};

/// Exponent p of the norm family; p = 0 selects the geometric-mean limit.
class NormExponent {
 public:
  explicit NormExponent(double p);
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// The exponent gamma of the integral constraint; gamma must be nonzero.
class GammaConstraint {
 public:
  explicit GammaConstraint(double gamma);
  double value() const noexcept { return gamma_; }
  NormExponent exponent() const { return NormExponent(gamma_); }

 private:
  double gamma_;
};

/// (integral of y^p)^(1/p) for p != 0 and exp(integral of ln y) for p = 0,
/// summed in closed form over the cells. Zero heights are allowed only for
/// p > 0.
double pnorm(const StepPotential& y, NormExponent p);
/// Same as above; throws ContractError if `y` carries deltas.
double pnorm(const Potential& y, NormExponent p);

struct Normalized {
  StepPotential q;
  double kappa;  // pnorm(f, gamma); f == kappa * q
};

/// Scales f onto the constraint set: q = f / pnorm(f, gamma).
Normalized normalize_gamma(const StepPotential& f, GammaConstraint gamma);
Normalized normalize_gamma(const Potential& f, GammaConstraint gamma);

/// Adds c to every height. Throws NegativeResult if a height would drop
/// below zero.
StepPotential shift(const StepPotential& q, double c);
Potential shift(const Potential& q, double c);

/// Re-expresses both functions on the union of their breakpoints.
std::pair<StepPotential, StepPotential> refine_common(const StepPotential& a,
                                                      const StepPotential& b);

/// Throws ContractError unless `breakpoints` is a valid partition of [0, 1]
/// into `cells` >= 1 cells.
void validate_breakpoints(std::span<const double> breakpoints, std::size_t cells);

/// Sorted union of two breakpoint sets (exact duplicates removed).
std::vector<double> merge_breakpoints(std::span<const double> a,
                                      std::span<const double> b);

/// Re-expresses `y` on `grid`, which must contain every breakpoint of `y`.
StepPotential resample(const StepPotential& y, std::span<const double> grid);

}  // namespace slx
