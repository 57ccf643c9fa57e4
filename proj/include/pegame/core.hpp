#pragma once

// Core value types and dynamics for a planar pursuit-evasion game between a
// double-integrator pursuer with bounded acceleration and hard speed cap, and
// a single-integrator evader with bounded speed.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pegame {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised when inputs violate documented preconditions (bad parameters,
// malformed configs, states outside the admissible set).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal numeric procedure cannot complete (bracketing
// failures, singular denominators, degenerate polynomials).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a query is made outside its feasible domain (infeasible
// heading, wrong phase, boundary of feasibility).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

// Normalizes an angle to [0, 2*pi).
inline double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // guard against fmod landing exactly on 2*pi
    return r;
}

// Smallest absolute angular distance between two headings.
inline double angle_distance(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return d > std::numbers::pi ? kTwoPi - d : d;
}

struct GameState {
    double x_P = 0.0;
    double y_P = 0.0;
    double v_Px = 0.0;
    double v_Py = 0.0;
    double x_E = 0.0;
    double y_E = 0.0;

    Vec2 pursuer_pos() const { return {x_P, y_P}; }
    Vec2 pursuer_vel() const { return {v_Px, v_Py}; }
    Vec2 evader_pos() const { return {x_E, y_E}; }
    double pursuer_speed() const { return std::hypot(v_Px, v_Py); }

    bool finite() const {
        return std::isfinite(x_P) && std::isfinite(y_P) && std::isfinite(v_Px) &&
               std::isfinite(v_Py) && std::isfinite(x_E) && std::isfinite(y_E);
    }
};

struct GameParams {
    double a_P_max = 1.0;          // pursuer acceleration bound
    double v_P_max = 1.0;          // pursuer hard speed cap
    double v_E_max = 0.0;          // evader speed bound
    double tol_speed = 1e-9;       // relative slack on the speed-cap check
    double capture_radius = 1e-3;  // simulation-only capture ball radius

    // Throws ValidationError on inadmissible parameters. Capture cannot be
    // guaranteed unless the pursuer's top speed strictly exceeds the
    // evader's, so such parameter sets are rejected outright.
    void validate() const {
        if (!(std::isfinite(a_P_max) && std::isfinite(v_P_max) && std::isfinite(v_E_max) &&
              std::isfinite(tol_speed) && std::isfinite(capture_radius)))
            throw ValidationError("params: all fields must be finite");
        if (!(a_P_max > 0.0)) throw ValidationError("params: a_P_max must be > 0");
        if (!(v_P_max > 0.0)) throw ValidationError("params: v_P_max must be > 0");
        if (v_E_max < 0.0) throw ValidationError("params: v_E_max must be >= 0");
        if (!(v_P_max > v_E_max))
            throw ValidationError("params: v_P_max must exceed v_E_max (capture guarantee)");
        if (tol_speed < 0.0) throw ValidationError("params: tol_speed must be >= 0");
        if (capture_radius < 0.0) throw ValidationError("params: capture_radius must be >= 0");
    }
};

// Instantaneous controls for both players. Angles normalized to [0, 2*pi).
struct StrategyCommand {
    double a_P = 0.0;
    double theta_P = 0.0;
    double v_E = 0.0;
    double theta_E = 0.0;

    static StrategyCommand make(double a_P, double theta_P, double v_E, double theta_E) {
        return {a_P, wrap_angle(theta_P), v_E, wrap_angle(theta_E)};
    }
};

enum class Phase { PreSaturation, PostSaturation };

inline const char* phase_name(Phase p) {
    return p == Phase::PreSaturation ? "PreSaturation" : "PostSaturation";
}

// Saddle-point capture prediction from a given state: time-to-capture, the
// capture point, both players' optimal headings, which solution branch
// produced it, and the pursuer's speed-saturation time along theta_P_star.
struct CaptureSolution {
    double t_f = 0.0;
    Vec2 capture_point{};
    double theta_P_star = 0.0;
    double theta_E_star = 0.0;
    Phase phase = Phase::PreSaturation;
    double t_theta_star = 0.0;
};

// Squared pursuer-evader separation (the terminal-condition function).
inline double psi(const GameState& s) {
    const double dx = s.x_P - s.x_E;
    const double dy = s.y_P - s.y_E;
    return dx * dx + dy * dy;
}

inline double separation(const GameState& s) { return std::sqrt(psi(s)); }

inline bool is_captured(const GameState& s, double capture_radius) {
    return psi(s) <= capture_radius * capture_radius;
}

// Advances the pursuer one step of size dt under (a_P, theta_P): semi-implicit
// Euler (velocity first, then position), followed by hard radial projection of
// the velocity onto the speed cap. Evader fields unchanged.
inline GameState step_pursuer(const GameState& s, const StrategyCommand& cmd, double dt,
                              const GameParams& params) {
    if (!s.finite() || !std::isfinite(cmd.a_P) || !std::isfinite(cmd.theta_P))
        throw ValidationError("step_pursuer: non-finite input");
    if (!(dt > 0.0)) throw ValidationError("step_pursuer: dt must be > 0");
    GameState n = s;
    double vx = s.v_Px + cmd.a_P * std::cos(cmd.theta_P) * dt;
    double vy = s.v_Py + cmd.a_P * std::sin(cmd.theta_P) * dt;
    const double speed = std::hypot(vx, vy);
    if (speed > params.v_P_max) {
        const double scale = params.v_P_max / speed;
        vx *= scale;
        vy *= scale;
    }
    n.v_Px = vx;
    n.v_Py = vy;
    n.x_P = s.x_P + vx * dt;
    n.y_P = s.y_P + vy * dt;
    return n;
}

// Advances the evader one step of size dt under (v_E, theta_E). Pursuer
// fields unchanged.
inline GameState step_evader(const GameState& s, const StrategyCommand& cmd, double dt) {
    if (!s.finite() || !std::isfinite(cmd.v_E) || !std::isfinite(cmd.theta_E))
        throw ValidationError("step_evader: non-finite input");
    if (!(dt > 0.0)) throw ValidationError("step_evader: dt must be > 0");
    GameState n = s;
    n.x_E = s.x_E + cmd.v_E * std::cos(cmd.theta_E) * dt;
    n.y_E = s.y_E + cmd.v_E * std::sin(cmd.theta_E) * dt;
    return n;
}

// Checks the pursuer speed-cap invariant with the configured relative slack.
inline void require_admissible_speed(const GameState& s, const GameParams& params) {
    if (s.pursuer_speed() > params.v_P_max * (1.0 + params.tol_speed))
        throw ValidationError("state: pursuer speed exceeds v_P_max");
}

}  // namespace pegame
