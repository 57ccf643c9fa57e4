#pragma once

// Closed-loop game runner: optimal, pure-pursuit, and pure-evasion policies
// in any pairing, with fixed-step integration, trajectory recording, and
// swept-segment capture detection.

#include <string>
#include <utility>
#include <vector>

#include "pegame/core.hpp"

namespace pegame {

enum class PursuerPolicy { Optimal, PurePursuit };
enum class EvaderPolicy { Optimal, PureEvasion };

struct PolicyKind {
    PursuerPolicy pursuer = PursuerPolicy::Optimal;
    EvaderPolicy evader = EvaderPolicy::Optimal;
};

enum class ReplanMode { OpenLoop, EveryStep };

struct TrajectorySample {
    double t = 0.0;
    GameState state{};        // state at time t, before this tick's step
    StrategyCommand command{};  // controls applied over [t, t+dt)
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool captured = false;
    // Capture instant interpolated within the crossing step (and refined by
    // the closing rate through the capture ball); horizon when timed out.
    double t_outcome = 0.0;
    // State at the capture instant (positions interpolated inside the
    // crossing step) when captured; the final integrated state otherwise.
    GameState final_state{};
};

// Raised when the solver fails mid-run; carries the trajectory integrated up
// to the failing tick so callers can inspect how the run got there.
struct SimulationError : NumericError {
    Trajectory partial;
    SimulationError(const std::string& what, Trajectory traj)
        : NumericError(what), partial(std::move(traj)) {}
};

// Earliest-intercept heading for a full-authority pursuer against an evader
// moving along a fixed ray: aims at the point where the pursuer's expanding
// reachable disc (ignoring the speed cap) first meets the extrapolated
// evader path. Falls back to the current bearing when no intercept exists.
double lead_intercept_heading(const GameState& state, const GameParams& params, double theta_E);

// Runs the game to capture or to the horizon. Optimal policies are driven by
// the analytic solver (open-loop: solved once and replayed; every-step:
// re-solved each tick with terminal-phase handoffs that keep the discrete
// closed loop consistent with the continuous saddle point).
Trajectory run_game(const GameState& initial, const GameParams& params, PolicyKind policies,
                    double dt, double horizon, ReplanMode replan);

}  // namespace pegame
