#include "pegame/strategy_solver.hpp"

#include <cmath>
#include <limits>

#include "pegame/phase1_geometric.hpp"
#include "pegame/phase2_numeric.hpp"

namespace pegame {

SolverResult solve(const GameState& state, const GameParams& params) {
    params.validate();
    if (!state.finite()) throw ValidationError("solve: non-finite state");
    require_admissible_speed(state, params);

    SolverResult res;

    if (psi(state) == 0.0) {
        // Already captured: zero value, null controls.
        res.command = StrategyCommand::make(0.0, 0.0, 0.0, 0.0);
        res.solution = {0.0, state.evader_pos(), 0.0, 0.0, Phase::PreSaturation, 0.0};
        return res;
    }

    // The pre-saturation tangency cover is only trusted while the pursuer
    // retains meaningful acceleration headroom. At or very near the cap, the
    // quartic can still produce tangency times along deceleration headings
    // (whose saturation time is large, so the t <= t_theta test passes), but
    // their value exceeds the coasting branch and accepting them breaks the
    // saddle; such states belong to the post-saturation solver.
    const bool headroom = state.pursuer_speed() < 0.98 * params.v_P_max;

    const double floor = 2.0 * params.v_E_max / params.a_P_max;
    for (double t : headroom ? candidate_capture_times(state, params) : std::vector<double>{}) {
        if (t <= floor + 1e-12) {
            // Boundary-degenerate tangency: direction undefined; record and
            // let later candidates or the post-saturation solver decide.
            res.candidates_examined.emplace_back(t, std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        const auto [cmd, theta] = phase1_strategy(state, t, params);
        const double t_theta = saturation_time(state, theta, params);
        res.candidates_examined.emplace_back(t, t_theta);
        if (t <= t_theta) {
            res.command = cmd;
            res.solution = {t, tangency_point(state, t, params), cmd.theta_P,
                            cmd.theta_E, Phase::PreSaturation, t_theta};
            return res;
        }
    }

    res.solution = solve_phase2(state, params);
    if (res.solution.t_theta_star > 1e-9) {
        // Not yet saturated: full acceleration along the optimal heading.
        res.command = StrategyCommand::make(params.a_P_max, res.solution.theta_P_star,
                                            params.v_E_max, res.solution.theta_E_star);
    } else {
        // Saturated: the ideal control is to coast, but a coasting command
        // leaves feedback replanning unable to steer. Command full
        // acceleration toward the capture point instead; the speed-cap
        // projection turns it into a pure rotation of the velocity (a no-op
        // when already aligned), which matches the coasting optimum while
        // staying well-defined for closed-loop use.
        const double bearing = std::atan2(res.solution.capture_point.y - state.y_P,
                                          res.solution.capture_point.x - state.x_P);
        res.command = StrategyCommand::make(params.a_P_max, bearing, params.v_E_max,
                                            res.solution.theta_E_star);
    }
    return res;
}

}  // namespace pegame
