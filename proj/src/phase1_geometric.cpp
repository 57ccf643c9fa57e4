#include "pegame/phase1_geometric.hpp"

#include <cmath>

namespace pegame {

namespace {

// Direction cosines of the heading from the drifted pursuer-disc center
// toward the tangency point at candidate time t. The shared denominator
// v_E_max*t - a_P_max*t^2/2 equals -|c_P(t) - c_E| at a tangency time, so the
// pair is unit-norm there.
struct TangencyDirection {
    double ct, sn, den;
};

TangencyDirection tangency_direction(const GameState& s, double t, const GameParams& p) {
    const double den = p.v_E_max * t - 0.5 * p.a_P_max * t * t;
    return {(s.x_P + s.v_Px * t - s.x_E) / den, (s.y_P + s.v_Py * t - s.y_E) / den, den};
}

void require_above_floor(double t, const GameParams& p) {
    const double floor = 2.0 * p.v_E_max / p.a_P_max;
    if (!(t > floor + 1e-12) || t <= 0.0)
        throw InfeasibleError("tangency degenerate: time not above 2*v_E_max/a_P_max");
}

}  // namespace

ReachabilityCircles reachability_circles(const GameState& s, double t, const GameParams& p) {
    ReachabilityCircles rc;
    rc.c_P = {s.x_P + s.v_Px * t, s.y_P + s.v_Py * t};
    rc.R_P = 0.5 * p.a_P_max * t * t;
    rc.c_E = {s.x_E, s.y_E};
    rc.R_E = p.v_E_max * t;
    rc.t = t;
    return rc;
}

double saturation_time(const GameState& s, double theta_P, const GameParams& p) {
    require_admissible_speed(s, p);
    const double cr = s.v_Px * std::sin(theta_P) - s.v_Py * std::cos(theta_P);
    const double al = s.v_Px * std::cos(theta_P) + s.v_Py * std::sin(theta_P);
    const double rad = std::max(p.v_P_max * p.v_P_max - cr * cr, 0.0);
    return std::max((std::sqrt(rad) - al) / p.a_P_max, 0.0);
}

PolyCoeffs gamma_quartic_coeffs(const GameState& s, const GameParams& p) {
    // Expansion of |d + v t|^2 - (a_P_max t^2/2 - v_E_max t)^2 with
    // d = pursuer - evader displacement and v the pursuer velocity.
    const double dx = s.x_P - s.x_E;
    const double dy = s.y_P - s.y_E;
    return {-0.25 * p.a_P_max * p.a_P_max,
            p.a_P_max * p.v_E_max,
            s.v_Px * s.v_Px + s.v_Py * s.v_Py - p.v_E_max * p.v_E_max,
            2.0 * (dx * s.v_Px + dy * s.v_Py),
            dx * dx + dy * dy};
}

std::vector<double> candidate_capture_times(const GameState& s, const GameParams& p) {
    const double floor = 2.0 * p.v_E_max / p.a_P_max;
    std::vector<double> out;
    for (double t : real_roots(gamma_quartic_coeffs(s, p)))
        if (t > 1e-12 && t >= floor - 1e-9) out.push_back(t);
    return out;
}

Vec2 tangency_point(const GameState& s, double t, const GameParams& p) {
    require_above_floor(t, p);
    const auto dir = tangency_direction(s, t, p);
    const double R_E = p.v_E_max * t;
    return {s.x_E + R_E * dir.ct, s.y_E + R_E * dir.sn};
}

std::pair<StrategyCommand, double> phase1_strategy(const GameState& s, double t_f,
                                                   const GameParams& p) {
    require_above_floor(t_f, p);
    const auto dir = tangency_direction(s, t_f, p);
    const double theta = std::atan2(dir.sn, dir.ct);
    return {StrategyCommand::make(p.a_P_max, theta, p.v_E_max, theta), theta};
}

}  // namespace pegame
