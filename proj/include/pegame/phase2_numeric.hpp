#pragma once

// Post-saturation capture solver. When pre-saturation tangency is impossible,
// the pursuer accelerates at full authority along a fixed heading until it
// hits the speed cap, then coasts. For each heading the guaranteed capture
// time against the worst evader ray solves a quadratic; the heading is chosen
// by maximizing that time over the feasible arc (where the quadratic has a
// real positive root), per the saddle-point structure of the game.

#include "pegame/core.hpp"

namespace pegame {

// Drift decomposition for a candidate heading theta_P: p is the pursuer
// velocity at saturation (|p| = v_P_max), q the position offset such that the
// pursuer-evader displacement after saturation is q + p*t.
struct PQTerms {
    double p_x = 0.0;
    double p_y = 0.0;
    double q_x = 0.0;
    double q_y = 0.0;
    double t_theta = 0.0;
};

// Heading arc on which the guaranteed-capture quadratic has a real root.
// When wraps is true the arc crosses the 2*pi seam (theta_hi < theta_lo
// numerically). A whole-circle domain is encoded as [0, 2*pi), wraps=false.
struct FeasibleDomain {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    bool wraps = false;

    bool whole_circle() const { return !wraps && theta_hi - theta_lo >= kTwoPi - 1e-9; }
    double arc_length() const {
        if (whole_circle()) return kTwoPi;
        return wraps ? theta_hi + kTwoPi - theta_lo : theta_hi - theta_lo;
    }
};

PQTerms pq_terms(const GameState& state, double theta_P, const GameParams& params);

// Discriminant-like feasibility function: w >= 0 iff heading theta_P admits a
// real guaranteed-capture time.
double w_feasibility(const GameState& state, double theta_P, const GameParams& params);

// Guaranteed capture time for heading theta_P against the worst evader ray.
// Throws InfeasibleError when w < 0, when the selected root is not positive,
// or when the root precedes the heading's saturation time (the straight-line
// capture model only describes the pursuer from saturation onward, so an
// earlier root is a backward extrapolation, not a reachable interception).
double capture_time_given_heading(const GameState& state, double theta_P,
                                  const GameParams& params);

// Brackets the feasible arc around the scan anchor theta=0 by the uniform
// march (step pi/500, reduced x10 up to 4 times) plus bisection to the two
// zeros of w. Returns the whole circle when w > 0 everywhere; throws
// NumericError when w < 0 everywhere (no post-saturation capture exists,
// which contradicts the capture guarantee and signals an upstream bug).
FeasibleDomain bracket_feasible_domain(const GameState& state, const GameParams& params);

// Full post-saturation solve: bracket, ternary search to 1e-10 rad on the
// capture-time objective, capture point, and both players' headings.
CaptureSolution solve_phase2(const GameState& state, const GameParams& params);

// Boundary of the pursuer's reachable set after its saturation time along
// heading theta_P, valid for t >= t_theta(theta_P); throws InfeasibleError
// for earlier times (the pre-saturation disc formula applies there).
Vec2 reachable_point_post_saturation(const GameState& state, double theta_P, double t,
                                     const GameParams& params);

}  // namespace pegame
