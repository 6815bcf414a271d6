#include "slx/search.hpp"

#include <cmath>
#include <random>

#include "slx/errors.hpp"

namespace slx {

void ExtremumSearchSpec::validate() const {
  if (cells < 2) throw ContractError("search needs at least two cells");
  if (max_iters < 0) throw ContractError("max_iters must be >= 0");
  if (!(initial_step > 0.0) || !(min_step > 0.0))
    throw ContractError("search steps must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0))
    throw ContractError("step_shrink must lie in (0, 1)");
  if (!(height_cap > 0.0)) throw ContractError("height_cap must be positive");
  if (start && start->cells() != static_cast<std::size_t>(cells))
    throw ContractError("start potential must have `cells` cells");
}

SearchResult search_extremum(const ExtremumSearchSpec& spec, const RobinBC& bc,
                             const SolverConfig& cfg) {
  spec.validate();
  const auto k = static_cast<std::size_t>(spec.cells);
  std::vector<double> heights(k, 1.0);
  if (spec.start) heights.assign(spec.start->heights().begin(), spec.start->heights().end());
  auto current = normalize_gamma(StepPotential::uniform(heights), spec.gamma).q;
  if (current.max_height() > spec.height_cap)
    throw ContractError("start potential violates the height cap");
  heights.assign(current.heights().begin(), current.heights().end());

  const bool minimize = spec.mode == SearchMode::Min;
  auto better = [&](double candidate, double incumbent) {
    return minimize ? candidate < incumbent : candidate > incumbent;
  };

  double best = lambda1(Potential(current), bc, cfg).lambda1;
  SearchResult result{current, best, {}};
  result.trace.reserve(static_cast<std::size_t>(spec.max_iters));

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick_cell(0, k - 1);
  std::bernoulli_distribution pick_sign(0.5);
  const int window = spec.stagnation_window > 0 ? spec.stagnation_window : 2 * spec.cells;
  double step = spec.initial_step;
  int rejections = 0;

  for (int it = 1; it <= spec.max_iters && step >= spec.min_step; ++it) {
    const std::size_t cell = pick_cell(rng);
    const double factor = std::exp(pick_sign(rng) ? step : -step);
    std::vector<double> proposal = heights;
    proposal[cell] *= factor;

    bool accepted = false;
    try {
      auto candidate = normalize_gamma(StepPotential::uniform(proposal), spec.gamma).q;
      if (candidate.max_height() <= spec.height_cap) {
        const double value = lambda1(Potential(candidate), bc, cfg).lambda1;
        if (better(value, best)) {
          best = value;
          heights.assign(candidate.heights().begin(), candidate.heights().end());
          result.best_q = std::move(candidate);
          accepted = true;
        }
      }
    } catch (const ZeroPotential&) {
      // heights underflowed; treat as a rejected proposal
    }

    result.trace.push_back({it, best, step, accepted});
    if (accepted) {
      rejections = 0;
    } else if (++rejections >= window) {
      step *= spec.step_shrink;
      rejections = 0;
    }
  }
  result.best_lambda = best;
  return result;
}

std::vector<SearchResult> search_rounds(ExtremumSearchSpec spec, const RobinBC& bc,
                                        int rounds, double cap_growth,
                                        const SolverConfig& cfg) {
  if (rounds < 1) throw ContractError("search_rounds needs at least one round");
  if (!(cap_growth >= 1.0)) throw ContractError("cap_growth must be >= 1");
  std::vector<SearchResult> out;
  for (int r = 0; r < rounds; ++r) {
    out.push_back(search_extremum(spec, bc, cfg));
    spec.start = out.back().best_q;
    spec.height_cap *= cap_growth;
    spec.seed += 1;
  }
  return out;
}

}  // namespace slx
