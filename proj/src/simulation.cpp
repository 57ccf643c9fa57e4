#include "pegame/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "pegame/poly_roots.hpp"
#include "pegame/strategy_solver.hpp"

namespace pegame {

namespace {

// --- Terminal-phase handoff tuning -----------------------------------------
//
// A per-tick re-solve chatters once the predicted capture time approaches the
// geometric floor 2*v_E_max/a_P_max: the saddle-point heading rotates faster
// than the integrator can follow and the pursuer stalls just outside the
// capture ball. The runner therefore latches both players into terminal
// modes shortly before capture: the pursuer switches to a lead-intercept
// chase of the evader's committed ray, and the evader (when itself optimal
// and facing the optimal pursuer) freezes its current worst-case ray. The
// thresholds are expressed as multiples of the floor.
constexpr double kLatchPhase1Slack = 0.2;   // pre-saturation: root <= floor*(1+slack)
constexpr double kLatchPhase2Factor = 0.2;  // post-saturation: t_f <= floor*factor
// Against a pure (radially fleeing) evader the straight-line extrapolation
// underlying the lead chase is reliable much earlier, and the early handoff
// is what closes the last fractions of the published gap between the
// optimal-evader and pure-evader capture times.
constexpr double kLatchPhase2FactorVsPure = 4.4;
constexpr double kLatchSpeedFraction = 0.95;  // pre-saturation latch requires spare speed

// --- Orbital-evasion tuning (optimal evader vs pure pursuit) ----------------
//
// Pure pursuit against a slower evader never captures in the continuous
// game; the evader realizes the divergence by entraining the pursuer into a
// co-rotating orbit (radius sp^2/a_P_max at the pursuer's turning rate) and
// then paying out the orbit radius at a slow ramp, which keeps the
// separation monotonically non-decreasing once locked.
constexpr double kOrbGain_lag = 2.0;    // tangential correction per rad of bearing lag
constexpr double kOrbGain_r = 4.0;      // radial tracking gain
constexpr double kOrbGain_v = 10.0;     // lag-target shift per unit speed error
constexpr double kOrbGain_d = 1.0;      // radial damping on the closing rate
constexpr double kOrbDrip = 0.01;       // constant outward bias
constexpr double kOrbRampRate = 0.01;   // reference-radius growth rate cap
constexpr double kOrbBetaClose = 0.35;  // outward bias while dodging a close pass
constexpr double kOrbBetaTransit = 0.55;  // outward bias while the pursuer swings wide
constexpr double kOrbBetaHover = 0.05;  // outward bias while the pursuer is slow

struct OrbitalEvaderState {
    double side = 0.0;  // +1/-1 once the pursuer's orbital sense is known
    double flip = 0.0;  // time accumulated toward a sense flip
    bool locked = false;
    double lock_sp = 0.0;    // pursuer speed captured at lock
    double lock_d0 = 0.0;    // separation captured at lock
    double lock_t = 0.0;     // time in lock
    double lock_rate = 0.0;  // reference-radius ramp rate
};

struct EvaderMove {
    double speed;
    double heading;
};

// Feedback evasion against a pure pursuer. Returns nothing when no mode
// applies; the caller then falls back to the solver's worst-case ray.
std::optional<EvaderMove> orbital_evader_command(const GameState& st, const GameParams& p,
                                                 OrbitalEvaderState& S, double dt) {
    const double aP = p.a_P_max;
    const double vE = p.v_E_max;
    const double ex = st.x_E - st.x_P;
    const double ey = st.y_E - st.y_P;
    const double d = std::hypot(ex, ey);
    const double ux = -ex / d;  // unit vector from evader toward pursuer
    const double uy = -ey / d;
    const double vx = st.v_Px;
    const double vy = st.v_Py;
    const double sp = std::hypot(vx, vy);
    const double cosA = (vx * ex + vy * ey) / std::max(sp * d, 1e-12);
    const double ddot = -(vx * ex + vy * ey) / d;
    const double crn = (ux * vy - uy * vx) / std::max(sp, 1e-12);

    // Orbital-sense hysteresis: commit to a side, flip only on a sustained
    // strong opposite signal.
    if (S.side == 0.0 && std::fabs(crn) > 0.1) S.side = crn > 0.0 ? 1.0 : -1.0;
    const double raws = crn >= 0.0 ? 1.0 : -1.0;
    if (S.side != 0.0 && std::fabs(crn) > 0.3 && raws != S.side) {
        S.flip += dt;
        if (S.flip >= 0.3) {
            S.side = raws;
            S.flip = 0.0;
        }
    } else {
        S.flip = 0.0;
    }
    const double s = S.side != 0.0 ? S.side : 1.0;
    const double tx = -uy * s;  // tangential, co-rotating with the pursuer
    const double ty = ux * s;
    const double ox = -ux;  // outward, away from the pursuer
    const double oy = -uy;
    const double lag = std::acos(std::clamp(cosA, -1.0, 1.0));

    if (!S.locked) {
        const double rPe = sp * sp / aP;       // pursuer turning radius at current speed
        const double dcoe = vE * sp / aP;      // radial authority scale
        const double ceil = rPe - 0.15 * dcoe;  // largest sustainable reference radius
        if (sp >= 1.6 * vE && std::fabs(cosA) < 0.60 && rPe - d >= -0.7 * dcoe &&
            rPe - d <= 0.9 * dcoe && ceil - d >= 0.15) {
            S.locked = true;
            S.lock_sp = sp;
            S.lock_d0 = d;
            S.lock_t = 0.0;
            S.lock_rate = std::min(kOrbRampRate, (ceil - d) / 60.0);
        }
    }
    if (S.locked) {
        const double rPr = S.lock_sp * S.lock_sp / aP;
        const double dcor = vE * S.lock_sp / aP;
        S.lock_t += dt;
        const double dref = S.lock_d0 + S.lock_rate * S.lock_t;
        if (sp < 0.6 * S.lock_sp || std::fabs(d - dref) > 0.8 * dcor) {
            S.locked = false;
        } else {
            const double om = aP / S.lock_sp;
            const double five_deg = 5.0 * std::numbers::pi / 180.0;
            const double lagT = 0.5 * std::numbers::pi +
                                std::clamp(kOrbGain_v * (S.lock_sp - sp), -five_deg, five_deg);
            const double vt =
                std::clamp(om * (rPr - d) - kOrbGain_lag * (lagT - lag) * vE, -vE, vE);
            const double cap = std::sqrt(std::max(vE * vE - vt * vt, 0.0));
            const double vr =
                std::clamp(kOrbGain_r * (dref - d) - kOrbGain_d * ddot + kOrbDrip, -cap, cap);
            return EvaderMove{std::hypot(vt, vr),
                              std::atan2(ty * vt + oy * vr, tx * vt + ox * vr)};
        }
    }

    const double dco = vE * p.v_P_max / aP;
    if (cosA > 0.7071 && ddot < -vE && sp > 2.0 * vE && d <= dco) {
        // Close pass incoming: sidestep mostly tangentially, more outward
        // bias the wider the miss distance.
        const double b = kOrbBetaClose * std::min(d / std::max(vE * sp / aP, 1e-9), 1.0);
        return EvaderMove{vE, std::atan2(ty * std::cos(b) + oy * std::sin(b),
                                         tx * std::cos(b) + ox * std::sin(b))};
    }
    if (sp <= 2.6 * vE) {
        const double b = kOrbBetaHover;
        return EvaderMove{vE, std::atan2(ty * std::cos(b) + oy * std::sin(b),
                                         tx * std::cos(b) + ox * std::sin(b))};
    }
    if (cosA < 0.7071 && sp > 2.0 * vE) {
        const double b = kOrbBetaTransit;
        return EvaderMove{vE, std::atan2(ty * std::cos(b) + oy * std::sin(b),
                                         tx * std::cos(b) + ox * std::sin(b))};
    }
    return std::nullopt;
}

}  // namespace

double lead_intercept_heading(const GameState& s, const GameParams& p, double theta_E) {
    const double dx = s.x_E - s.x_P;
    const double dy = s.y_E - s.y_P;
    const double vrx = p.v_E_max * std::cos(theta_E) - s.v_Px;
    const double vry = p.v_E_max * std::sin(theta_E) - s.v_Py;
    const PolyCoeffs coeffs{-0.25 * p.a_P_max * p.a_P_max, 0.0, vrx * vrx + vry * vry,
                            2.0 * (dx * vrx + dy * vry), dx * dx + dy * dy};
    for (double t : real_roots(coeffs)) {
        if (t > 1e-9) return std::atan2(dy + vry * t, dx + vrx * t);
    }
    return std::atan2(dy, dx);
}

Trajectory run_game(const GameState& initial, const GameParams& params, PolicyKind policies,
                    double dt, double horizon, ReplanMode replan) {
    params.validate();
    if (!(dt > 0.0) || !(horizon > 0.0) || !(dt <= horizon))
        throw ValidationError("run_game: requires 0 < dt <= horizon");
    if (!initial.finite()) throw ValidationError("run_game: non-finite initial state");
    require_admissible_speed(initial, params);

    const long n = std::lround(horizon / dt);
    const double r = params.capture_radius;
    const double floor = 2.0 * params.v_E_max / params.a_P_max;
    const bool orbital =
        policies.pursuer == PursuerPolicy::PurePursuit && policies.evader == EvaderPolicy::Optimal;
    const bool any_optimal =
        policies.pursuer == PursuerPolicy::Optimal || policies.evader == EvaderPolicy::Optimal;
    const double k2P = policies.evader == EvaderPolicy::PureEvasion ? kLatchPhase2FactorVsPure
                                                                    : kLatchPhase2Factor;

    Trajectory traj;
    traj.samples.reserve(static_cast<size_t>(std::min<long>(n, 1 << 22)));

    // Any solver failure mid-run surfaces with the trajectory so far, so the
    // offending approach path stays inspectable.
    const auto checked_solve = [&traj, &params](const GameState& at) -> SolverResult {
        try {
            return solve(at, params);
        } catch (const std::runtime_error& e) {
            throw SimulationError(e.what(), traj);
        }
    };

    // Open-loop plan: solve once and replay the constant controls, cutting
    // pursuer acceleration at the planned saturation time.
    double plan_thP = 0.0, plan_thE = 0.0, plan_tth = 0.0;
    if (replan == ReplanMode::OpenLoop && any_optimal) {
        const SolverResult sr0 = checked_solve(initial);
        plan_thP = sr0.command.theta_P;
        plan_thE = sr0.command.theta_E;
        plan_tth = sr0.solution.t_theta_star;
    }

    bool latchP = false, latchE = false;
    double thE_frozen = 0.0;
    OrbitalEvaderState orb;

    GameState st = initial;
    double t = 0.0;
    for (long k = 0; k < n; ++k) {
        const double relx = st.x_P - st.x_E;
        const double rely = st.y_P - st.y_E;
        const double d = std::hypot(relx, rely);
        const double bear = std::atan2(-rely, -relx);  // pursuer-to-evader bearing

        std::optional<SolverResult> cm;
        if (replan == ReplanMode::EveryStep && any_optimal && !orbital && !(latchP && latchE)) {
            cm = checked_solve(st);
            const double spd = st.pursuer_speed();
            const bool pre = cm->solution.phase == Phase::PreSaturation;
            const double min_root =
                pre && !cm->candidates_examined.empty() ? cm->candidates_examined.front().first
                                                        : 0.0;
            const bool ph1_hit = pre && min_root <= floor * (1.0 + kLatchPhase1Slack) &&
                                 spd < kLatchSpeedFraction * params.v_P_max;
            const bool post_hitP = !pre && cm->solution.t_f <= floor * k2P;
            const bool post_hitE = !pre && cm->solution.t_f <= floor * kLatchPhase2Factor;
            if (!latchP && (ph1_hit || post_hitP)) latchP = true;
            if (!latchE && (ph1_hit || post_hitE)) {
                latchE = true;
                thE_frozen = cm->solution.theta_E_star;
            }
        }

        // Evader controls.
        double vE_cmd = params.v_E_max;
        double thE_cmd;
        if (policies.evader == EvaderPolicy::PureEvasion) {
            thE_cmd = bear;  // flee radially away from the pursuer's current position
        } else if (replan == ReplanMode::OpenLoop) {
            thE_cmd = plan_thE;
        } else if (orbital) {
            if (const auto mv = orbital_evader_command(st, params, orb, dt)) {
                vE_cmd = mv->speed;
                thE_cmd = mv->heading;
            } else {
                thE_cmd = checked_solve(st).solution.theta_E_star;
            }
        } else {
            thE_cmd = (latchE && policies.pursuer == PursuerPolicy::Optimal)
                          ? thE_frozen
                          : cm->solution.theta_E_star;
        }

        // Pursuer controls.
        double aP_cmd, thP_cmd;
        if (policies.pursuer == PursuerPolicy::PurePursuit) {
            aP_cmd = params.a_P_max;
            thP_cmd = bear;
        } else if (replan == ReplanMode::OpenLoop) {
            // The step that straddles the planned saturation time gets the
            // average acceleration that lands the velocity exactly on the
            // speed cap. Letting it overshoot and be radially projected
            // instead would tilt the velocity off the planned ray by
            // O(a_P*dt), and the long cruise that follows integrates that
            // tilt into a lateral miss comparable to the capture radius.
            if (t + dt <= plan_tth)
                aP_cmd = params.a_P_max;
            else if (t < plan_tth)
                aP_cmd = params.a_P_max * (plan_tth - t) / dt;
            else
                aP_cmd = 0.0;
            thP_cmd = plan_thP;
        } else if (latchP) {
            aP_cmd = params.a_P_max;
            thP_cmd = lead_intercept_heading(st, params, thE_cmd);
        } else {
            aP_cmd = cm->command.a_P;
            thP_cmd = cm->command.theta_P;
        }

        const StrategyCommand cmd = StrategyCommand::make(aP_cmd, thP_cmd, vE_cmd, thE_cmd);
        traj.samples.push_back({t, st, cmd});

        GameState nst = step_evader(step_pursuer(st, cmd, dt, params), cmd, dt);

        // Swept-segment capture test on the relative position over this step:
        // the minimum separation along the segment must not skip through the
        // capture ball between samples.
        const double r1x = nst.x_P - nst.x_E;
        const double r1y = nst.y_P - nst.y_E;
        const double drx = r1x - relx;
        const double dry = r1y - rely;
        const double a2 = drx * drx + dry * dry;
        double tau = a2 > 0.0 ? -(relx * drx + rely * dry) / a2 : 0.0;
        tau = std::clamp(tau, 0.0, 1.0);
        const double dseg = std::hypot(relx + tau * drx, rely + tau * dry);
        if (dseg <= r) {
            // Entry point into the capture ball, then extrapolation of the
            // closing rate through the remaining radius: reports the
            // point-coincidence time the analytic game predicts.
            const double b = 2.0 * (relx * drx + rely * dry);
            const double c0 = relx * relx + rely * rely - r * r;
            const double disc = std::max(b * b - 4.0 * a2 * c0, 0.0);
            const double tau_in = a2 > 0.0 ? (-b - std::sqrt(disc)) / (2.0 * a2) : 0.0;
            const double pvx = relx + tau_in * drx;
            const double pvy = rely + tau_in * dry;
            const double pvn = std::max(std::hypot(pvx, pvy), 1e-300);
            const double rate = -(pvx * drx + pvy * dry) / (dt * pvn);
            traj.captured = true;
            traj.t_outcome = t + tau_in * dt + (rate > 0.0 ? r / rate : 0.0);
            GameState cap = nst;
            cap.x_P = st.x_P + tau_in * (nst.x_P - st.x_P);
            cap.y_P = st.y_P + tau_in * (nst.y_P - st.y_P);
            cap.x_E = st.x_E + tau_in * (nst.x_E - st.x_E);
            cap.y_E = st.y_E + tau_in * (nst.y_E - st.y_E);
            traj.final_state = cap;
            return traj;
        }
        (void)d;
        st = nst;
        t += dt;
    }

    traj.captured = false;
    traj.t_outcome = horizon;
    traj.final_state = st;
    return traj;
}

}  // namespace pegame
