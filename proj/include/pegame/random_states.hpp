#pragma once

#include <random>

#include "pegame/core.hpp"

namespace pegame {

// A randomly drawn solvable game instance: state plus limits.
struct RandomScenario {
    GameState state{};
    GameParams params{};
};

// Draws a solvable instance whose optimal solution lies on the
// pre-saturation branch (high speed cap relative to the engagement scale);
// rejection-sampled until the solver confirms the branch.
RandomScenario random_scenario_phase1(std::mt19937_64& rng);

// Same, forced onto the post-saturation branch (tight speed cap, pursuer
// already near it, evader far).
RandomScenario random_scenario_phase2(std::mt19937_64& rng);

// Solvable instance with no branch requirement. Half the draws point the
// pursuer's velocity directly away from the evader to exercise recovery
// geometries.
RandomScenario random_scenario_any(std::mt19937_64& rng);

}  // namespace pegame
