#pragma once

#include <string>
#include <string_view>

#include "slx/eigen_solver.hpp"
#include "slx/families.hpp"
#include "slx/potential.hpp"
#include "slx/search.hpp"

namespace slx {

// Potentials use {"breakpoints": [...], "heights": [...], "deltas":
// [{"site": s, "weight": w}, ...]}; "deltas" is optional on input. Numbers
// are written in shortest round-trip form, so parsing the output restores
// every double exactly.

std::string to_json(const StepPotential& q);
std::string to_json(const Potential& q);
Potential potential_from_json(std::string_view text);

std::string to_json(const EigenResult& result, bool with_eigenfunction = false);
std::string to_json(const ConvergenceTable& table);
std::string to_json(const UnboundednessTable& table);
std::string to_json(const SearchResult& result);

}  // namespace slx
