#pragma once

// Pre-saturation capture solver. While the pursuer's speed stays below its
// cap, its reachable set at time t is a disc of radius a_P_max*t^2/2 drifting
// with the initial velocity, and the evader's is a disc of radius v_E_max*t.
// Capture at the earliest guaranteed time corresponds to the evader disc
// being internally tangent to the pursuer disc; the tangency times solve a
// quartic, and the optimal headings aim both players at the tangency point.

#include <utility>
#include <vector>

#include "pegame/core.hpp"
#include "pegame/poly_roots.hpp"

namespace pegame {

// Reachable-set discs for both players at elapsed time t.
struct ReachabilityCircles {
    Vec2 c_P{};    // pursuer disc center: initial position + initial velocity * t
    double R_P = 0.0;  // a_P_max * t^2 / 2
    Vec2 c_E{};    // evader disc center: initial evader position
    double R_E = 0.0;  // v_E_max * t
    double t = 0.0;
};

ReachabilityCircles reachability_circles(const GameState& state, double t,
                                         const GameParams& params);

// Time for the pursuer to hit its speed cap when accelerating at a_P_max
// along fixed heading theta_P. Zero when already saturated along a heading
// that cannot raise speed. Throws ValidationError when the current speed
// already exceeds the cap.
double saturation_time(const GameState& state, double theta_P, const GameParams& params);

// Coefficients (highest degree first) of the quartic whose roots are the
// candidate internal-tangency times of the two reachable discs.
PolyCoeffs gamma_quartic_coeffs(const GameState& state, const GameParams& params);

// All real tangency times at or above the geometric floor 2*v_E_max/a_P_max
// (within 1e-9 slack), ascending. May be empty.
std::vector<double> candidate_capture_times(const GameState& state, const GameParams& params);

// The point where the evader disc touches the pursuer disc at candidate time
// t. Requires t strictly above the floor (the tangency direction degenerates
// at the floor); throws InfeasibleError otherwise.
Vec2 tangency_point(const GameState& state, double t, const GameParams& params);

// Saddle-point controls for a pre-saturation capture at time t_f: both
// players run at full authority along the common heading toward the tangency
// point. Returns the command and the heading.
std::pair<StrategyCommand, double> phase1_strategy(const GameState& state, double t_f,
                                                   const GameParams& params);

}  // namespace pegame
