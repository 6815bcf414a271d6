#pragma once

#include <string>
#include <vector>

#include "slx/eigen_solver.hpp"
#include "slx/potential.hpp"

namespace slx {

/// Unit-mass spike of height n on ((zeta - 1/n)^+, (zeta - 1/n)^+ + 1/n).
struct SpikeFamilySpec {
  double zeta = 0.5;
  long long n = 2;

  void validate() const;
};

struct SpikeFamilyMember {
  StepPotential q;
  /// Closed-form gamma-norm n^((gamma - 1) / gamma).
  double gamma_norm;
};

/// Spike family whose gamma-norm vanishes for gamma in (0, 1) while the
/// functions converge to the point mass at zeta.
SpikeFamilyMember statement1_family(const SpikeFamilySpec& spec, double gamma);

/// Spike of height n^(1/gamma) on (0, 1/n): constraint integral 1, mass
/// n^(1/gamma - 1). Requires gamma > 1, n >= 2.
StepPotential statement3_family(double gamma, long long n);

/// Uniform spike train on a positive floor approximating the constant level
/// `target_level`: f = floor + m spikes of height h and mass
/// (target_level - floor) / m centred at (j - 1/2) / m.
struct SpikeTrainSpec {
  double target_level = 10.0;
  double floor = 0.1;
  int spike_count = 100;
  double spike_height = 1e6;
  double nu = 0.75;

  void validate() const;
};

struct SpikeTrainMember {
  StepPotential f;      // unnormalized train
  StepPotential q;      // f / kappa, a member of the constraint set
  double kappa;         // gamma-norm of f, in (0, 1)
  double nu_norm;       // nu-norm of f, < 1
};

/// Builds the normalized spike train. Throws NormBudgetExceeded when the
/// nu-norm of the train is not below 1.
SpikeTrainMember statement2_family(const SpikeTrainSpec& spec, double gamma);

/// Closed-form nu-norm of the unnormalized train.
double spike_train_nu_norm(const SpikeTrainSpec& spec);

/// Smallest spike height (up to a factor 1.01) giving a nu-norm of at most
/// `budget`, never below target_level - floor.
double spike_height_for_budget(SpikeTrainSpec spec, double budget);

struct ConvergenceRow {
  double n_or_rho = 0.0;
  double lambda1 = 0.0;
  double reference = 0.0;
  double gap = 0.0;  // reference - lambda1
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Every lambda1 stays below the reference (within tolerance).
  bool bounded = true;
  /// The gap is nonincreasing along the rows (within tolerance).
  bool monotone = true;

  std::string to_csv() const;
};

struct UnboundednessRow {
  double rho = 0.0;
  double lambda1 = 0.0;
  double reference = 0.0;   // lambda1(0) - rho
  double gap = 0.0;         // reference - lambda1
  double slack = 0.0;       // certificate - reference
  double certificate = 0.0; // Rayleigh bound of the train with the q = 0 mode
  double kappa = 0.0;
  double constraint_norm = 0.0;  // gamma-norm of the member, should be 1
  double spike_height = 0.0;
  int spike_count = 0;
  bool certified = false;
};

struct UnboundednessTable {
  std::vector<UnboundednessRow> rows;
  bool certified = true;  // every row certified
  bool decreasing = true; // lambda1 strictly decreasing along the rows

  std::string to_csv() const;
};

struct Thm1Options {
  int spike_count = 100;
  double floor = 0.1;
  /// Exponent of the intermediate norm; <= 0 picks gamma^+ + (1 - gamma^+) / 10.
  double nu = 0.0;
  /// Target nu-norm of the train when tuning the spike height.
  double norm_budget = 0.5;
  /// Tolerance on |pnorm(q, gamma) - 1| for a member to count as certified.
  double constraint_tolerance = 1e-10;
};

/// Ceiling experiment: lambda1 of the shrinking-mass family of
/// statement3_family against the zero-potential value.
ConvergenceTable verify_thm2(double gamma, const RobinBC& bc,
                             const std::vector<long long>& n_list,
                             const SolverConfig& cfg = {});

/// Unboundedness experiment: for each level rho, a member of the constraint set
/// whose first eigenvalue lies below lambda1(0) - rho up to a variational
/// slack.
UnboundednessTable verify_thm1(double gamma, const RobinBC& bc,
                               const std::vector<double>& rho_list,
                               const SolverConfig& cfg = {},
                               const Thm1Options& options = {});

/// Raises the level until the certified member has lambda1 < -bound.
UnboundednessRow certify_below(double gamma, const RobinBC& bc, double bound,
                               const SolverConfig& cfg = {},
                               const Thm1Options& options = {});

}  // namespace slx
