#pragma once

// Analytic partial derivatives of the game value (time-to-capture) for both
// solution branches, the stationarity residual of the value PDE, and a
// continuity check across the branch-switch boundary.

#include <functional>
#include <utility>

#include "pegame/core.hpp"

namespace pegame {

// Partials of V = t_f with respect to the six state components.
struct ValueGradient {
    double dV_dxP = 0.0;
    double dV_dyP = 0.0;
    double dV_dvPx = 0.0;
    double dV_dvPy = 0.0;
    double dV_dxE = 0.0;
    double dV_dyE = 0.0;
};

// Gradient on the pre-saturation branch via implicit differentiation of the
// tangency quartic at its accepted root. Throws NumericError when the
// implicit-function denominator is singular.
ValueGradient gradient_phase1(const GameState& state, const CaptureSolution& sol,
                              const GameParams& params);

// Gradient on the post-saturation branch via the envelope theorem at the
// optimal heading (the heading's first-order variation drops out at the
// argmax). Throws InfeasibleError on the feasibility boundary (w = 0).
ValueGradient gradient_phase2(const GameState& state, const CaptureSolution& sol,
                              const GameParams& params);

// Left-hand side of the stationarity PDE evaluated with the analytic
// gradient and the optimal controls; identically zero in exact arithmetic,
// so the return value is pure numerical residual.
double hji_residual(const GameState& state, const GameParams& params);

// Central finite differences of the re-solved capture time with respect to
// each state component — the independent numerical oracle the analytic
// gradient is checked against. `step` is the per-component perturbation.
ValueGradient finite_difference_gradient(const GameState& state, const GameParams& params,
                                         double step);

// Largest relative disagreement between an analytic gradient and its
// finite-difference counterpart, component-wise, with denominators floored
// at 1 to keep near-zero components meaningful.
double gradient_relative_error(const ValueGradient& analytic, const ValueGradient& numeric);

// One-parameter family of (state, params) pairs, e.g. a top-speed sweep.
using StateFamily = std::function<std::pair<GameState, GameParams>(double)>;

struct SwitchContinuityReport {
    double param_at_crossing = 0.0;  // family parameter at the located boundary
    double t_f_pre_side = 0.0;       // value on the pre-saturation side
    double t_f_post_side = 0.0;      // value on the post-saturation side
    double value_jump = 0.0;         // |t_f_pre_side - t_f_post_side|
    double theta_gap = 0.0;          // heading disagreement across the boundary
};

// Locates a branch switch along the family by bisection on the parameter and
// reports the value jump and heading gap at parameter gap 1e-8. Throws
// NumericError when the family never crosses the boundary.
SwitchContinuityReport switch_continuity_check(const StateFamily& family, double lambda_lo,
                                               double lambda_hi);

}  // namespace pegame
