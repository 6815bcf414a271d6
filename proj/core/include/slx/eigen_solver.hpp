#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slx/potential.hpp"

namespace slx {

/// Third-type boundary conditions y'(0) = k0sq * y(0), y'(1) = -k1sq * y(1).
struct RobinBC {
  double k0sq = 0.0;
  double k1sq = 0.0;

  RobinBC() = default;
  RobinBC(double k0_squared, double k1_squared);

  friend bool operator==(const RobinBC&, const RobinBC&) = default;
};

struct SolverConfig {
  /// Minimum number of RK4 steps on every constant-coefficient cell.
  int ode_steps_per_cell = 16;
  /// Steps per unit of width * max(1, sqrt|lambda + q|) on a cell; the
  /// effective count is the larger of this and ode_steps_per_cell.
  double phase_resolution = 512.0;
  double theta_tolerance = 1e-10;
  /// Bisection stops once the bracket is narrower than
  /// lambda_tolerance * max(1, |lambda|) and the angle residual is within
  /// theta_tolerance.
  double lambda_tolerance = 1e-13;
  int max_bracket_expansions = 60;
  int max_bisection_iterations = 400;
  /// Upper limit on RK4 steps for one cell. Exceeding it raises
  /// SolverError("StepBudgetExceeded") in theta_end and BracketNotFound in
  /// lambda1.
  double max_steps_per_cell = 5e7;
  bool keep_eigenfunction = false;

  void validate() const;
};

/// A point of the eigenfunction: y and y' at x. Normalized so max |y| = 1.
struct EigenfunctionSample {
  double x = 0.0;
  double y = 0.0;
  double dy = 0.0;
};

struct EigenResult {
  double lambda1 = 0.0;
  double residual = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  std::optional<std::vector<EigenfunctionSample>> eigenfunction;
};

/// Prufer angle at x = 1 for the given lambda. The angle starts at
/// arccot(k0sq) in (0, pi/2], follows theta' = cos^2 + (lambda + q) sin^2 and
/// jumps cot(theta+) = cot(theta-) - w at each delta.
double theta_end(const Potential& q, const RobinBC& bc, double lambda,
                 const SolverConfig& cfg = {});

/// Angle the first eigenfunction reaches at x = 1: pi - arccot(k1sq).
double theta_target(const RobinBC& bc);

/// First eigenvalue by Prufer shooting with bracket expansion and bisection.
EigenResult lambda1(const Potential& q, const RobinBC& bc, const SolverConfig& cfg = {});

/// Independent P1 finite-element estimate of the first eigenvalue on a uniform
/// grid with `n_nodes` nodes. Delta sites are snapped to the nearest node.
double lambda1_fd(const Potential& q, const RobinBC& bc, int n_nodes);

/// First eigenvalue for q = 0 from the characteristic equation
/// tan(w) (w^2 - k0sq k1sq) = w (k0sq + k1sq), lambda = w^2.
double lambda1_zero(const RobinBC& bc);

/// Eigenfunction of the q = 0 problem sampled at `xs`, scaled so y(0) = 1.
std::vector<EigenfunctionSample> zero_potential_mode(const RobinBC& bc,
                                                     std::span<const double> xs);

/// Sampled trial function for the Rayleigh quotient. When every sample carries
/// a derivative the trial function is the cubic Hermite interpolant, otherwise
/// the piecewise-linear one. Repeated x values are allowed (derivative jumps
/// at delta sites).
struct TrialSample {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> dy;
};

/// Rayleigh quotient of the quadratic form
///   int y'^2 + k0sq y(0)^2 + k1sq y(1)^2 - int q y^2 - sum w y(site)^2
/// over int y^2, integrated exactly for piecewise-linear trial functions and
/// with 4-point Gauss rules on every smooth piece otherwise. Samples must be
/// sorted with x running from 0 to 1.
double rayleigh(const Potential& q, const RobinBC& bc, std::span<const TrialSample> samples);
double rayleigh(const Potential& q, const RobinBC& bc,
                std::span<const EigenfunctionSample> samples);

/// Rigorous lower bound on the first eigenvalue:
/// -(max q + W + W^2) with W the total delta weight.
double lambda1_lower_bound(const Potential& q);

}  // namespace slx
