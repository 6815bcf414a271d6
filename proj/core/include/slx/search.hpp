#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "slx/eigen_solver.hpp"
#include "slx/potential.hpp"

namespace slx {

enum class SearchMode { Min, Max };

struct ExtremumSearchSpec {
  GammaConstraint gamma{1.0};
  SearchMode mode = SearchMode::Max;
  int cells = 8;
  int max_iters = 500;
  /// Log of the multiplicative perturbation applied to one cell.
  double initial_step = 0.5;
  double min_step = 1e-4;
  double step_shrink = 0.5;
  /// Consecutive rejections before the step shrinks; 0 means 2 * cells.
  int stagnation_window = 0;
  /// Proposals whose normalized heights exceed this cap are rejected.
  double height_cap = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  /// Starting potential on `cells` uniform cells; defaults to q = 1.
  std::optional<StepPotential> start;

  void validate() const;
};

struct SearchTracePoint {
  int iteration = 0;
  double best_lambda = 0.0;
  double step = 0.0;
  bool accepted = false;
};

struct SearchResult {
  StepPotential best_q;
  double best_lambda;
  std::vector<SearchTracePoint> trace;
};

/// Accept-only-improving coordinate search over the cell heights of a uniform
/// step potential, kept on the constraint set by renormalizing every proposal.
SearchResult search_extremum(const ExtremumSearchSpec& spec, const RobinBC& bc,
                             const SolverConfig& cfg = {});

/// Repeats the search `rounds` times, multiplying the height cap by
/// `cap_growth` between rounds and restarting from the previous best.
std::vector<SearchResult> search_rounds(ExtremumSearchSpec spec, const RobinBC& bc,
                                        int rounds, double cap_growth = 2.0,
                                        const SolverConfig& cfg = {});

}  // namespace slx
