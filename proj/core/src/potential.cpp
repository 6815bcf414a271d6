#include "slx/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slx/errors.hpp"

namespace slx {

void validate_breakpoints(std::span<const double> breakpoints, std::size_t cells) {
  if (cells < 1) throw ContractError("step function needs at least one cell");
  if (breakpoints.size() != cells + 1)
    throw ContractError("breakpoints must number heights + 1 (got " +
                        std::to_string(breakpoints.size()) + " breakpoints for " +
                        std::to_string(cells) + " heights)");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw ContractError("breakpoints must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i + 1]) || !(breakpoints[i] < breakpoints[i + 1]))
      throw ContractError("breakpoints must be finite and strictly increasing");
  }
}

namespace {

// Index of the cell holding x (right cell at interior breakpoints).
std::size_t locate(std::span<const double> breakpoints, double x) {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  auto idx = static_cast<std::ptrdiff_t>(it - breakpoints.begin()) - 1;
  const auto last = static_cast<std::ptrdiff_t>(breakpoints.size()) - 2;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, last));
}

}  // namespace

StepPotential::StepPotential(std::vector<double> breakpoints,
                             std::vector<double> heights)
    : breakpoints_(std::move(breakpoints)), heights_(std::move(heights)) {
  validate_breakpoints(breakpoints_, heights_.size());
  for (double h : heights_) {
    if (!std::isfinite(h) || h < 0.0)
      throw ContractError("potential heights must be finite and nonnegative");
  }
}

StepPotential StepPotential::constant(double value) {
  return StepPotential({0.0, 1.0}, {value});
}

StepPotential StepPotential::uniform(std::span<const double> heights) {
  const std::size_t k = heights.size();
  if (k == 0) throw ContractError("uniform step potential needs at least one cell");
  std::vector<double> grid(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(k);
  return StepPotential(std::move(grid), {heights.begin(), heights.end()});
}

double StepPotential::operator()(double x) const {
  return heights_[locate(breakpoints_, x)];
}

double StepPotential::min_height() const noexcept {
  return *std::min_element(heights_.begin(), heights_.end());
}

double StepPotential::max_height() const noexcept {
  return *std::max_element(heights_.begin(), heights_.end());
}

double StepPotential::mass() const noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < cells(); ++i) sum += heights_[i] * width(i);
  return sum;
}

StepPotential StepPotential::scaled(double factor) const {
  std::vector<double> h(heights_);
  for (double& v : h) v *= factor;
  return StepPotential(breakpoints_, std::move(h));
}

Potential::Potential(StepPotential step, std::vector<DeltaComponent> deltas)
    : step_(std::move(step)) {
  for (const auto& d : deltas) {
    if (!(d.site >= 0.0 && d.site <= 1.0))
      throw ContractError("delta site must lie in [0, 1]");
    if (!std::isfinite(d.weight) || !(d.weight > 0.0))
      throw ContractError("delta weight must be finite and positive");
  }
  std::stable_sort(deltas.begin(), deltas.end(),
                   [](const auto& a, const auto& b) { return a.site < b.site; });
  for (const auto& d : deltas) {
    if (!deltas_.empty() && deltas_.back().site == d.site)
      deltas_.back().weight += d.weight;
    else
      deltas_.push_back(d);
  }
}

double Potential::total_delta_weight() const noexcept {
  double w = 0.0;
  for (const auto& d : deltas_) w += d.weight;
  return w;
}

NormExponent::NormExponent(double p) : p_(p) {
  if (!std::isfinite(p)) throw ContractError("norm exponent must be finite");
}

GammaConstraint::GammaConstraint(double gamma) : gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma == 0.0)
    throw ContractError("gamma must be finite and nonzero");
}

double pnorm(const StepPotential& y, NormExponent exponent) {
  const double p = exponent.value();
  const auto h = y.heights();
  if (p <= 0.0 && y.min_height() <= 0.0)
    throw NonPositiveExponentOnVanishingFunction(
        "norm with exponent <= 0 requires strictly positive heights");

  if (p == 0.0) {
    double log_mean = 0.0;
    for (std::size_t i = 0; i < y.cells(); ++i) log_mean += std::log(h[i]) * y.width(i);
    return std::exp(log_mean);
  }

  if (std::abs(p) < 1e-3) {
    // Near the geometric-mean limit: sum (h^p - 1) dx with expm1/log1p so the
    // O(p) signal is not swamped by the unit mass.
    double excess = 0.0;
    for (std::size_t i = 0; i < y.cells(); ++i)
      excess += std::expm1(p * std::log(h[i])) * y.width(i);
    return std::exp(std::log1p(excess) / p);
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < y.cells(); ++i) {
    if (h[i] > 0.0) sum += std::pow(h[i], p) * y.width(i);
  }
  return std::pow(sum, 1.0 / p);
}

double pnorm(const Potential& y, NormExponent p) {
  if (y.has_deltas())
    throw ContractError("the norm family is defined for the step part only; "
                        "potential carries delta components");
  return pnorm(y.step(), p);
}

Normalized normalize_gamma(const StepPotential& f, GammaConstraint gamma) {
  double kappa = 0.0;
  try {
    kappa = pnorm(f, gamma.exponent());
  } catch (const NonPositiveExponentOnVanishingFunction& e) {
    throw ZeroPotential(std::string("gamma-norm undefined: ") + e.what());
  }
  if (!std::isfinite(kappa) || !(kappa > 0.0))
    throw ZeroPotential("gamma-norm is zero or not finite; cannot normalize");
  return {f.scaled(1.0 / kappa), kappa};
}

Normalized normalize_gamma(const Potential& f, GammaConstraint gamma) {
  if (f.has_deltas())
    throw ContractError("normalization applies to the step part only; "
                        "potential carries delta components");
  return normalize_gamma(f.step(), gamma);
}

StepPotential shift(const StepPotential& q, double c) {
  if (!std::isfinite(c)) throw ContractError("shift must be finite");
  std::vector<double> h(q.heights().begin(), q.heights().end());
  for (double& v : h) {
    v += c;
    if (v < 0.0)
      throw NegativeResult("shift by " + std::to_string(c) +
                           " leaves a negative height");
  }
  return StepPotential({q.breakpoints().begin(), q.breakpoints().end()}, std::move(h));
}

Potential shift(const Potential& q, double c) {
  return Potential(shift(q.step(), c), {q.deltas().begin(), q.deltas().end()});
}

std::vector<double> merge_breakpoints(std::span<const double> a,
                                      std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StepPotential resample(const StepPotential& y, std::span<const double> grid) {
  std::vector<double> h(grid.size() - 1);
  const auto bp = y.breakpoints();
  std::size_t cell = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (cell + 1 < y.cells() && bp[cell + 1] <= grid[i]) ++cell;
    h[i] = y.heights()[cell];
  }
  return StepPotential({grid.begin(), grid.end()}, std::move(h));
}

std::pair<StepPotential, StepPotential> refine_common(const StepPotential& a,
                                                      const StepPotential& b) {
  const auto grid = merge_breakpoints(a.breakpoints(), b.breakpoints());
  return {resample(a, grid), resample(b, grid)};
}

}  // namespace slx
