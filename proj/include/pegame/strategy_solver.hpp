#pragma once

// Case dispatcher over the two capture solvers: try every pre-saturation
// tangency candidate in ascending order, accept the first whose capture time
// does not exceed the saturation time along its own optimal heading, and
// otherwise delegate to the post-saturation solver.

#include <utility>
#include <vector>

#include "pegame/core.hpp"

namespace pegame {

struct SolverResult {
    StrategyCommand command{};   // instantaneous optimal controls at `state`
    CaptureSolution solution{};
    // Each pre-saturation candidate examined as (t, t_theta along its
    // heading); t_theta is NaN for candidates skipped as degenerate
    // (tangency time at the geometric floor).
    std::vector<std::pair<double, double>> candidates_examined{};
};

SolverResult solve(const GameState& state, const GameParams& params);

}  // namespace pegame
