#include "slx/eigen_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "slx/errors.hpp"

namespace slx {

namespace {

constexpr double kPi = std::numbers::pi;

// arccot with values in (0, pi/2] for nonnegative arguments.
double arccot_nonneg(double v) { return std::atan2(1.0, v); }

struct AngleState {
  double theta = 0.0;
  double log_r = 0.0;
};

struct RawSample {
  double x;
  double theta;
  double log_r;
};

class PruferPropagator {
 public:
  PruferPropagator(const Potential& q, double lambda, const SolverConfig& cfg,
                   std::vector<RawSample>* samples)
      : q_(q), lambda_(lambda), cfg_(cfg), samples_(samples) {}

  AngleState run(AngleState state) {
    const auto& step = q_.step();
    const auto bp = step.breakpoints();
    const auto deltas = q_.deltas();
    std::size_t di = 0;
    record(0.0, state);
    for (std::size_t cell = 0; cell < step.cells(); ++cell) {
      const double a = bp[cell];
      const double b = bp[cell + 1];
      const double mu = lambda_ + step.heights()[cell];
      double x = a;
      while (di < deltas.size() && deltas[di].site < b) {
        const double site = std::max(deltas[di].site, x);
        if (site > x) {
          integrate(state, x, site, mu);
          x = site;
        }
        jump(state, deltas[di].weight);
        record(x, state);
        ++di;
      }
      integrate(state, x, b, mu);
    }
    for (; di < deltas.size(); ++di) {
      jump(state, deltas[di].weight);
      record(1.0, state);
    }
    return state;
  }

 private:
  void record(double x, const AngleState& s) {
    if (samples_ != nullptr) samples_->push_back({x, s.theta, s.log_r});
  }

  // theta' = cos^2 + mu sin^2 = A + B cos(2 theta), (ln r)' = B sin(2 theta).
  void integrate(AngleState& s, double x0, double x1, double mu) {
    const double len = x1 - x0;
    if (!(len > 0.0)) return;
    const double rate = std::max(1.0, std::sqrt(std::abs(mu)));
    const double wanted = std::ceil(len * cfg_.phase_resolution * rate);
    if (!(wanted <= cfg_.max_steps_per_cell))
      throw SolverError("StepBudgetExceeded",
                        "cell needs " + std::to_string(wanted) + " integration steps");
    const auto n = static_cast<long long>(std::max<double>(cfg_.ode_steps_per_cell, wanted));
    const double h = len / static_cast<double>(n);
    const double a = 0.5 * (1.0 + mu);
    const double bcoef = 0.5 * (1.0 - mu);
    auto f = [&](double t) { return a + bcoef * std::cos(2.0 * t); };
    const bool track_amplitude = samples_ != nullptr;
    for (long long i = 0; i < n; ++i) {
      const double t = s.theta;
      const double k1 = f(t);
      const double t2 = t + 0.5 * h * k1;
      const double k2 = f(t2);
      const double t3 = t + 0.5 * h * k2;
      const double k3 = f(t3);
      const double t4 = t + h * k3;
      const double k4 = f(t4);
      if (track_amplitude) {
        const double l1 = bcoef * std::sin(2.0 * t);
        const double l2 = bcoef * std::sin(2.0 * t2);
        const double l3 = bcoef * std::sin(2.0 * t3);
        const double l4 = bcoef * std::sin(2.0 * t4);
        s.log_r += h / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
      }
      s.theta = t + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (track_amplitude) record(i + 1 == n ? x1 : x0 + h * static_cast<double>(i + 1), s);
    }
  }

  // y continuous, y' jumps by -w y: cot(theta+) = cot(theta-) - w in the same
  // pi-period.
  static void jump(AngleState& s, double w) {
    const double period = std::floor(s.theta / kPi);
    const double phi = s.theta - period * kPi;
    if (!(phi > 0.0)) return;
    const double sin_before = std::sin(phi);
    const double cot_after = std::cos(phi) / sin_before - w;
    const double phi_after = std::max(phi, 0.5 * kPi - std::atan(cot_after));
    s.log_r += std::log(sin_before / std::sin(phi_after));
    s.theta = period * kPi + phi_after;
  }

  const Potential& q_;
  double lambda_;
  const SolverConfig& cfg_;
  std::vector<RawSample>* samples_;
};

AngleState initial_state(const RobinBC& bc) { return {arccot_nonneg(bc.k0sq), 0.0}; }

std::vector<EigenfunctionSample> to_eigenfunction(const std::vector<RawSample>& raw) {
  double max_log = raw.front().log_r;
  for (const auto& s : raw) max_log = std::max(max_log, s.log_r);
  std::vector<EigenfunctionSample> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    const double r = std::exp(s.log_r - max_log);
    out.push_back({s.x, r * std::sin(s.theta), r * std::cos(s.theta)});
  }
  double ymax = 0.0;
  for (const auto& s : out) ymax = std::max(ymax, std::abs(s.y));
  if (ymax > 0.0) {
    for (auto& s : out) {
      s.y /= ymax;
      s.dy /= ymax;
    }
  }
  return out;
}

// Cubic Hermite or linear interpolation of sampled data.
struct Interpolant {
  std::span<const TrialSample> samples;
  bool hermite;

  struct Value {
    double y;
    double dy;
  };

  Value on_interval(std::size_t j, double x) const {
    const auto& l = samples[j];
    const auto& r = samples[j + 1];
    const double len = r.x - l.x;
    const double u = (x - l.x) / len;
    if (!hermite) return {(1.0 - u) * l.y + u * r.y, (r.y - l.y) / len};
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double d0 = *l.dy * len;
    const double d1 = *r.dy * len;
    const double y = (2 * u3 - 3 * u2 + 1) * l.y + (u3 - 2 * u2 + u) * d0 +
                     (-2 * u3 + 3 * u2) * r.y + (u3 - u2) * d1;
    const double dy = ((6 * u2 - 6 * u) * l.y + (3 * u2 - 4 * u + 1) * d0 +
                       (-6 * u2 + 6 * u) * r.y + (3 * u2 - 2 * u) * d1) /
                      len;
    return {y, dy};
  }

  double at(double x) const {
    for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
      if (samples[j + 1].x > samples[j].x && x <= samples[j + 1].x)
        return on_interval(j, x).y;
    }
    return samples.back().y;
  }
};

}  // namespace

RobinBC::RobinBC(double k0_squared, double k1_squared)
    : k0sq(k0_squared), k1sq(k1_squared) {
  if (!std::isfinite(k0sq) || !std::isfinite(k1sq) || k0sq < 0.0 || k1sq < 0.0)
    throw ContractError("boundary coefficients k0^2, k1^2 must be finite and >= 0");
}

void SolverConfig::validate() const {
  if (ode_steps_per_cell < 16) throw ContractError("ode_steps_per_cell must be >= 16");
  if (!(phase_resolution > 0.0)) throw ContractError("phase_resolution must be positive");
  if (!(theta_tolerance > 0.0)) throw ContractError("theta_tolerance must be positive");
  if (!(lambda_tolerance > 0.0)) throw ContractError("lambda_tolerance must be positive");
  if (max_bracket_expansions < 0) throw ContractError("max_bracket_expansions must be >= 0");
  if (max_bisection_iterations < 1) throw ContractError("max_bisection_iterations must be >= 1");
  if (!(max_steps_per_cell >= ode_steps_per_cell))
    throw ContractError("max_steps_per_cell must be >= ode_steps_per_cell");
}

double theta_target(const RobinBC& bc) { return kPi - arccot_nonneg(bc.k1sq); }

double theta_end(const Potential& q, const RobinBC& bc, double lambda,
                 const SolverConfig& cfg) {
  if (!std::isfinite(lambda)) throw NonFiniteInput("lambda must be finite");
  return PruferPropagator(q, lambda, cfg, nullptr).run(initial_state(bc)).theta;
}

double lambda1_lower_bound(const Potential& q) {
  const double w = q.total_delta_weight();
  return -(q.step().max_height() + w + w * w);
}

EigenResult lambda1(const Potential& q, const RobinBC& bc, const SolverConfig& cfg) {
  cfg.validate();
  const double target = theta_target(bc);
  auto residual = [&](double lambda) {
    try {
      return theta_end(q, bc, lambda, cfg) - target;
    } catch (const SolverError& e) {
      if (e.kind() != "StepBudgetExceeded") throw;
      throw BracketNotFound("lambda = " + std::to_string(lambda) + ": " + e.what());
    }
  };

  double lo = lambda1_lower_bound(q) - 1.0;
  double hi = kPi * kPi + 1.0;
  double g_lo = residual(lo);
  double g_hi = residual(hi);
  int expansions = 0;
  while (!(g_lo < 0.0) || !(g_hi > 0.0)) {
    if (expansions++ >= cfg.max_bracket_expansions)
      throw BracketNotFound("no sign change of the Prufer residual in [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "] after " +
                            std::to_string(cfg.max_bracket_expansions) + " expansions");
    const double width = hi - lo;
    if (!(g_lo < 0.0)) {
      lo -= width;
      g_lo = residual(lo);
    }
    if (!(g_hi > 0.0)) {
      hi += width;
      g_hi = residual(hi);
    }
  }

  EigenResult result;
  double mid = 0.5 * (lo + hi);
  double g_mid = residual(mid);
  int iterations = 1;
  while (iterations < cfg.max_bisection_iterations) {
    const bool narrow = (hi - lo) <= cfg.lambda_tolerance * std::max(1.0, std::abs(mid));
    if (narrow && std::abs(g_mid) <= cfg.theta_tolerance) break;
    if (g_mid < 0.0)
      lo = mid;
    else if (g_mid > 0.0)
      hi = mid;
    else
      lo = hi = mid;
    const double next = 0.5 * (lo + hi);
    if (next == mid || lo == hi) break;
    mid = next;
    g_mid = residual(mid);
    ++iterations;
  }

  result.lambda1 = mid;
  result.residual = std::abs(g_mid);
  result.bracket = {std::min(lo, mid), std::max(hi, mid)};
  result.iterations = iterations;
  if (cfg.keep_eigenfunction) {
    std::vector<RawSample> raw;
    PruferPropagator(q, mid, cfg, &raw).run(initial_state(bc));
    result.eigenfunction = to_eigenfunction(raw);
  }
  return result;
}

double lambda1_zero(const RobinBC& bc) {
  const double a = bc.k0sq;
  const double b = bc.k1sq;
  if (a == 0.0 && b == 0.0) return 0.0;
  // (w^2 - ab) sin w - w (a + b) cos w, divided by w so the root at 0 drops
  // out; negative at 0+, positive at pi, single sign change in between.
  auto h = [&](double w) {
    const double sinc = w == 0.0 ? 1.0 : std::sin(w) / w;
    return w * std::sin(w) - a * b * sinc - (a + b) * std::cos(w);
  };
  double lo = 0.0;
  double hi = kPi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double w = 0.5 * (lo + hi);
  return w * w;
}

std::vector<EigenfunctionSample> zero_potential_mode(const RobinBC& bc,
                                                     std::span<const double> xs) {
  const double w = std::sqrt(lambda1_zero(bc));
  std::vector<EigenfunctionSample> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (w == 0.0) {
      out.push_back({x, 1.0, 0.0});
    } else {
      const double c = std::cos(w * x);
      const double s = std::sin(w * x);
      out.push_back({x, c + bc.k0sq / w * s, -w * s + bc.k0sq * c});
    }
  }
  return out;
}

double rayleigh(const Potential& q, const RobinBC& bc, std::span<const TrialSample> samples) {
  if (samples.size() < 2) throw ContractError("rayleigh needs at least two samples");
  if (samples.front().x != 0.0 || samples.back().x != 1.0)
    throw ContractError("rayleigh samples must cover [0, 1]");
  bool hermite = true;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (!std::isfinite(samples[j].y)) throw NonFiniteInput("non-finite sample value");
    if (j > 0 && samples[j].x < samples[j - 1].x)
      throw ContractError("rayleigh samples must be sorted by x");
    hermite = hermite && samples[j].dy.has_value();
  }
  const Interpolant interp{samples, hermite};

  static constexpr std::array<double, 4> gauss_x{-0.8611363115940526, -0.3399810435848563,
                                                 0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> gauss_w{0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};

  const auto& step = q.step();
  const auto bp = step.breakpoints();
  double grad = 0.0;
  double l2 = 0.0;
  double weighted = 0.0;
  std::size_t cell = 0;
  for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
    const double xa = samples[j].x;
    const double xb = samples[j + 1].x;
    if (!(xb > xa)) continue;
    while (cell + 1 < step.cells() && bp[cell + 1] <= xa) ++cell;
    for (std::size_t c = cell; c < step.cells() && bp[c] < xb; ++c) {
      const double s = std::max(xa, bp[c]);
      const double t = std::min(xb, bp[c + 1]);
      if (!(t > s)) continue;
      const double half = 0.5 * (t - s);
      const double centre = 0.5 * (t + s);
      double piece_grad = 0.0;
      double piece_l2 = 0.0;
      for (std::size_t g = 0; g < gauss_x.size(); ++g) {
        const auto v = interp.on_interval(j, centre + half * gauss_x[g]);
        piece_grad += gauss_w[g] * v.dy * v.dy;
        piece_l2 += gauss_w[g] * v.y * v.y;
      }
      grad += half * piece_grad;
      l2 += half * piece_l2;
      weighted += step.heights()[c] * half * piece_l2;
    }
  }
  if (!(l2 > 0.0)) throw ZeroFunction("trial function has zero L2 norm");

  const double y0 = samples.front().y;
  const double y1 = samples.back().y;
  double form = grad + bc.k0sq * y0 * y0 + bc.k1sq * y1 * y1 - weighted;
  for (const auto& d : q.deltas()) {
    const double v = interp.at(d.site);
    form -= d.weight * v * v;
  }
  return form / l2;
}

double rayleigh(const Potential& q, const RobinBC& bc,
                std::span<const EigenfunctionSample> samples) {
  std::vector<TrialSample> trial;
  trial.reserve(samples.size());
  for (const auto& s : samples) trial.push_back({s.x, s.y, s.dy});
  return rayleigh(q, bc, trial);
}

}  // namespace slx
