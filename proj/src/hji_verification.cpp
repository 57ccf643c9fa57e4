#include "pegame/hji_verification.hpp"

#include <algorithm>
#include <cmath>

#include "pegame/phase2_numeric.hpp"
#include "pegame/strategy_solver.hpp"

namespace pegame {

ValueGradient gradient_phase1(const GameState& s, const CaptureSolution& sol,
                              const GameParams& p) {
    if (sol.phase != Phase::PreSaturation)
        throw ValidationError("gradient_phase1: solution is not on the pre-saturation branch");
    const double t = sol.t_f;
    const double d_x = s.x_P - s.x_E + s.v_Px * t;
    const double d_y = s.y_P - s.y_E + s.v_Py * t;
    // Implicit differentiation of the tangency quartic at its root: D is
    // (minus half) the time-derivative of the quartic there.
    const double D = (0.5 * p.a_P_max * t * t - p.v_E_max * t) * (p.a_P_max * t - p.v_E_max) -
                     d_x * s.v_Px - d_y * s.v_Py;
    const double scale = std::max({1.0, std::fabs(d_x) + std::fabs(d_y), t * t});
    if (std::fabs(D) < 1e-12 * scale)
        throw NumericError("gradient_phase1: singular implicit-function denominator");
    ValueGradient g;
    g.dV_dxP = d_x / D;
    g.dV_dyP = d_y / D;
    g.dV_dvPx = d_x * t / D;
    g.dV_dvPy = d_y * t / D;
    g.dV_dxE = -d_x / D;
    g.dV_dyE = -d_y / D;
    return g;
}

ValueGradient gradient_phase2(const GameState& s, const CaptureSolution& sol,
                              const GameParams& p) {
    if (sol.phase != Phase::PostSaturation)
        throw ValidationError("gradient_phase2: solution is not on the post-saturation branch");
    const double theta = sol.theta_P_star;
    const double ct = std::cos(theta);
    const double sn = std::sin(theta);
    const PQTerms pq = pq_terms(s, theta, p);
    const double c = p.v_P_max * p.v_P_max - p.v_E_max * p.v_E_max;
    const double h = pq.p_x * pq.q_x + pq.p_y * pq.q_y;
    const double w = h * h - c * (pq.q_x * pq.q_x + pq.q_y * pq.q_y);
    if (!(w > 0.0))
        throw InfeasibleError("gradient_phase2: on the feasibility boundary (g <= 0)");
    const double g_val = std::sqrt(w);

    // Sensitivities of the saturation time to the velocity components,
    // scaled by a_P_max.
    const double cr = s.v_Px * sn - s.v_Py * ct;
    const double root = std::sqrt(std::max(p.v_P_max * p.v_P_max - cr * cr, 0.0));
    if (root <= 0.0)
        throw NumericError("gradient_phase2: saturation-time sensitivity singular");
    const double R1 = -cr * sn / root - ct;
    const double R2 = cr * ct / root - sn;
    if (std::fabs(R1 * ct + R2 * sn + 1.0) > 1e-9)
        throw NumericError("gradient_phase2: internal R-identity violated");

    const double hg1 = h / g_val - 1.0;
    ValueGradient out;
    // Position partials: only q depends on the pursuer/evader positions.
    out.dV_dxP = hg1 * pq.p_x / c - pq.q_x / g_val;
    out.dV_dyP = hg1 * pq.p_y / c - pq.q_y / g_val;
    out.dV_dxE = -out.dV_dxP;
    out.dV_dyE = -out.dV_dyP;

    // Velocity partials: p and q both move with the saturation time.
    const double cq = ct * pq.q_x + sn * pq.q_y;
    const double cp = ct * pq.p_x + sn * pq.p_y;
    const double tth = pq.t_theta;
    const double dh_dvx = pq.q_x + (cq - cp * tth) * R1;
    const double dh_dvy = pq.q_y + (cq - cp * tth) * R2;
    const double qdq_dvx = -cq * tth * R1;
    const double qdq_dvy = -cq * tth * R2;
    out.dV_dvPx = hg1 * dh_dvx / c - qdq_dvx / g_val;
    out.dV_dvPy = hg1 * dh_dvy / c - qdq_dvy / g_val;
    return out;
}

double hji_residual(const GameState& s, const GameParams& p) {
    const SolverResult sr = solve(s, p);
    const CaptureSolution& sol = sr.solution;
    ValueGradient g;
    double a_cmd, theta_a;
    if (sol.phase == Phase::PreSaturation) {
        g = gradient_phase1(s, sol, p);
        a_cmd = p.a_P_max;
        theta_a = sol.theta_P_star;
    } else {
        g = gradient_phase2(s, sol, p);
        if (sol.t_theta_star > 1e-9) {
            a_cmd = p.a_P_max;
            theta_a = sol.theta_P_star;
        } else {
            a_cmd = 0.0;  // saturated: optimal acceleration switches off
            theta_a = sol.theta_P_star;
        }
    }
    return g.dV_dxP * s.v_Px + g.dV_dyP * s.v_Py + g.dV_dvPx * a_cmd * std::cos(theta_a) +
           g.dV_dvPy * a_cmd * std::sin(theta_a) +
           g.dV_dxE * p.v_E_max * std::cos(sol.theta_E_star) +
           g.dV_dyE * p.v_E_max * std::sin(sol.theta_E_star) + 1.0;
}

ValueGradient finite_difference_gradient(const GameState& s, const GameParams& p, double step) {
    const auto tf_at = [&p](const GameState& st) { return solve(st, p).solution.t_f; };
    const auto central = [&](auto setter) {
        GameState hi = s, lo = s;
        setter(hi, step);
        setter(lo, -step);
        return (tf_at(hi) - tf_at(lo)) / (2.0 * step);
    };
    ValueGradient g;
    g.dV_dxP = central([](GameState& st, double h) { st.x_P += h; });
    g.dV_dyP = central([](GameState& st, double h) { st.y_P += h; });
    g.dV_dvPx = central([](GameState& st, double h) { st.v_Px += h; });
    g.dV_dvPy = central([](GameState& st, double h) { st.v_Py += h; });
    g.dV_dxE = central([](GameState& st, double h) { st.x_E += h; });
    g.dV_dyE = central([](GameState& st, double h) { st.y_E += h; });
    return g;
}

double gradient_relative_error(const ValueGradient& a, const ValueGradient& n) {
    const auto rel = [](double x, double y) {
        return std::fabs(x - y) / std::max({1.0, std::fabs(x), std::fabs(y)});
    };
    return std::max({rel(a.dV_dxP, n.dV_dxP), rel(a.dV_dyP, n.dV_dyP),
                     rel(a.dV_dvPx, n.dV_dvPx), rel(a.dV_dvPy, n.dV_dvPy),
                     rel(a.dV_dxE, n.dV_dxE), rel(a.dV_dyE, n.dV_dyE)});
}

SwitchContinuityReport switch_continuity_check(const StateFamily& family, double lambda_lo,
                                               double lambda_hi) {
    const auto phase_at = [&](double lam) {
        const auto [st, pr] = family(lam);
        return solve(st, pr).solution.phase;
    };

    // Find a sub-interval whose endpoints sit on different branches.
    constexpr int kScan = 64;
    double a = lambda_lo, b = lambda_hi;
    Phase pa = phase_at(a);
    bool found = false;
    double prev = a;
    Phase prev_phase = pa;
    for (int k = 1; k <= kScan; ++k) {
        const double lam = lambda_lo + (lambda_hi - lambda_lo) * k / kScan;
        const Phase ph = phase_at(lam);
        if (ph != prev_phase) {
            a = prev;
            pa = prev_phase;
            b = lam;
            found = true;
            break;
        }
        prev = lam;
        prev_phase = ph;
    }
    if (!found) throw NumericError("switch_continuity_check: family does not cross the boundary");

    while (b - a > 1e-8) {
        const double mid = 0.5 * (a + b);
        if (phase_at(mid) == pa)
            a = mid;
        else
            b = mid;
    }

    const auto [st_a, pr_a] = family(a);
    const auto [st_b, pr_b] = family(b);
    const SolverResult ra = solve(st_a, pr_a);
    const SolverResult rb = solve(st_b, pr_b);
    const SolverResult& pre = ra.solution.phase == Phase::PreSaturation ? ra : rb;
    const SolverResult& post = ra.solution.phase == Phase::PreSaturation ? rb : ra;

    SwitchContinuityReport rep;
    rep.param_at_crossing = 0.5 * (a + b);
    rep.t_f_pre_side = pre.solution.t_f;
    rep.t_f_post_side = post.solution.t_f;
    rep.value_jump = std::fabs(pre.solution.t_f - post.solution.t_f);
    rep.theta_gap = angle_distance(pre.solution.theta_P_star, post.solution.theta_P_star);
    return rep;
}

}  // namespace pegame
