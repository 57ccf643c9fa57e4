#include "pegame/phase2_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pegame/phase1_geometric.hpp"

namespace pegame {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kScanStep0 = std::numbers::pi / 500.0;
constexpr int kMaxStepReductions = 4;
constexpr double kTernaryTol = 1e-10;
constexpr int kTernaryIters = 200;

double w_of(const PQTerms& pq, const GameParams& p) {
    const double h = pq.p_x * pq.q_x + pq.p_y * pq.q_y;
    const double c = p.v_P_max * p.v_P_max - p.v_E_max * p.v_E_max;
    return h * h - c * (pq.q_x * pq.q_x + pq.q_y * pq.q_y);
}

// Capture-time objective: the guaranteed time for heading theta, or -inf on
// headings with no usable interception. A heading is rejected when w < 0
// (the straight segment never meets the evader's growing disc), when the
// root is non-positive, or when the root precedes the heading's saturation
// time: the straight-line capture model describes the pursuer only from
// saturation onward, so an earlier root is an artifact of extrapolating
// that line backward through states the pursuer never occupies.
double objective(const GameState& s, double theta, const GameParams& p) {
    const PQTerms pq = pq_terms(s, theta, p);
    const double h = pq.p_x * pq.q_x + pq.p_y * pq.q_y;
    const double c = p.v_P_max * p.v_P_max - p.v_E_max * p.v_E_max;
    const double w = h * h - c * (pq.q_x * pq.q_x + pq.q_y * pq.q_y);
    if (w < 0.0) return kNegInf;
    const double t = (std::sqrt(w) - h) / c;
    if (!(t > 0.0)) return kNegInf;
    if (t < pq.t_theta - 1e-9 * std::max(1.0, pq.t_theta)) return kNegInf;
    return t;
}

// Ternary search for the maximum of the objective on [lo, hi].
double ternary_max(const GameState& s, const GameParams& p, double lo, double hi) {
    for (int it = 0; it < kTernaryIters && (hi - lo) > kTernaryTol; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(s, m1, p) < objective(s, m2, p))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

// Golden-section refinement used for the whole-circle-feasible fallback.
double golden_max(const GameState& s, const GameParams& p, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c1 = b - invphi * (b - a);
    double c2 = a + invphi * (b - a);
    double f1 = objective(s, c1, p);
    double f2 = objective(s, c2, p);
    for (int it = 0; it < kTernaryIters && (b - a) > kTernaryTol; ++it) {
        if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + invphi * (b - a);
            f2 = objective(s, c2, p);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - invphi * (b - a);
            f1 = objective(s, c1, p);
        }
    }
    return 0.5 * (a + b);
}

// Bisects w to a zero inside [lo, hi] given w(lo) and w(hi) straddle zero.
double bisect_w(const GameState& s, const GameParams& p, double lo, double hi) {
    double flo = w_feasibility(s, lo, p);
    for (int it = 0; it < 120 && (hi - lo) > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = w_feasibility(s, mid, p);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ArcSearchResult {
    double theta = 0.0;
    double t_f = kNegInf;
};

// Fallback when the anchored arc yields no usable capture time: the feasible
// set can split into several arcs around the circle, and the anchored one may
// consist entirely of headings whose root precedes saturation. Scan the whole
// circle for the usable heading with the largest guaranteed time -- the
// evader's best escape ray among all admissible interception geometries --
// and refine around it.
ArcSearchResult best_heading_by_global_scan(const GameState& s, const GameParams& p) {
    constexpr int kGrid = 4000;
    int arg = -1;
    double best = kNegInf;
    for (int k = 0; k < kGrid; ++k) {
        const double th = kTwoPi * k / kGrid;
        const double v = objective(s, th, p);
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    if (arg < 0 || !std::isfinite(best) || best <= 0.0)
        throw NumericError(
            "post-saturation solve: no heading admits a capture at or after saturation");
    const double th0 = kTwoPi * arg / kGrid;
    const double th_ref = ternary_max(s, p, th0 - kTwoPi / kGrid, th0 + kTwoPi / kGrid);
    const double v_ref = objective(s, th_ref, p);
    if (std::isfinite(v_ref) && v_ref >= best) return {th_ref, v_ref};
    return {th0, best};
}

}  // namespace

PQTerms pq_terms(const GameState& s, double theta_P, const GameParams& p) {
    const double t_theta = saturation_time(s, theta_P, p);
    const double ct = std::cos(theta_P);
    const double sn = std::sin(theta_P);
    PQTerms pq;
    pq.t_theta = t_theta;
    pq.p_x = s.v_Px + p.a_P_max * ct * t_theta;
    pq.p_y = s.v_Py + p.a_P_max * sn * t_theta;
    pq.q_x = s.x_P - s.x_E - 0.5 * p.a_P_max * ct * t_theta * t_theta;
    pq.q_y = s.y_P - s.y_E - 0.5 * p.a_P_max * sn * t_theta * t_theta;
    return pq;
}

double w_feasibility(const GameState& s, double theta_P, const GameParams& p) {
    return w_of(pq_terms(s, theta_P, p), p);
}

double capture_time_given_heading(const GameState& s, double theta_P, const GameParams& p) {
    p.validate();
    const PQTerms pq = pq_terms(s, theta_P, p);
    const double h = pq.p_x * pq.q_x + pq.p_y * pq.q_y;
    const double c = p.v_P_max * p.v_P_max - p.v_E_max * p.v_E_max;
    const double w = h * h - c * (pq.q_x * pq.q_x + pq.q_y * pq.q_y);
    if (w < 0.0) throw InfeasibleError("capture_time_given_heading: infeasible heading (w < 0)");
    const double q2 = pq.q_x * pq.q_x + pq.q_y * pq.q_y;
    if (q2 == 0.0) return 0.0;  // already coincident
    const double t = (std::sqrt(w) - h) / c;
    if (!(t > 0.0))
        throw InfeasibleError("capture_time_given_heading: selected root is not positive");
    if (t < pq.t_theta - 1e-9 * std::max(1.0, pq.t_theta))
        throw InfeasibleError(
            "capture_time_given_heading: root precedes this heading's saturation time");
    return t;
}

FeasibleDomain bracket_feasible_domain(const GameState& s, const GameParams& p) {
    p.validate();
    require_admissible_speed(s, p);
    const auto W = [&](double th) { return w_feasibility(s, th, p); };

    // Scale for the anchor-on-zero test.
    const double scale0 = std::max({std::fabs(W(0.0)), p.v_P_max * p.v_P_max, 1.0});
    double anchor = 0.0;
    if (std::fabs(W(anchor)) <= 1e-12 * scale0) anchor = std::numbers::pi / 1000.0;

    // If the anchor is infeasible, march around the circle for any feasible
    // heading, reducing the step x10 on failure.
    if (W(anchor) < 0.0) {
        bool found = false;
        double step = kScanStep0;
        for (int red = 0; red <= kMaxStepReductions && !found; ++red, step /= 10.0) {
            const long nsteps = static_cast<long>(std::ceil(kTwoPi / step));
            for (long k = 1; k <= nsteps; ++k) {
                const double th = anchor + k * step;
                if (W(th) > 0.0) {
                    anchor = th;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw NumericError(
                "bracket_feasible_domain: w < 0 everywhere (no post-saturation capture; "
                "upstream bug)");
    }

    // March from the feasible anchor to the nearest sign change on each side,
    // reducing the step when a full circle shows no sign change.
    double z_hi = std::numeric_limits<double>::quiet_NaN();
    double z_lo = std::numeric_limits<double>::quiet_NaN();
    double step = kScanStep0;
    for (int red = 0; red <= kMaxStepReductions; ++red, step /= 10.0) {
        const long nsteps = static_cast<long>(std::ceil(kTwoPi / step)) + 1;
        for (long k = 1; k <= nsteps; ++k) {
            const double th = anchor + k * step;
            if (W(th) < 0.0) {
                z_hi = bisect_w(s, p, th - step, th);
                break;
            }
        }
        if (std::isnan(z_hi)) continue;  // no negative heading at this step size
        for (long k = 1; k <= nsteps; ++k) {
            const double th = anchor - k * step;
            if (W(th) < 0.0) {
                // Falling edge going downward: w(th) < 0 <= w(th + step).
                double lo = th, hi = th + step;
                for (int it = 0; it < 120 && (hi - lo) > 1e-13; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (W(mid) < 0.0)
                        lo = mid;
                    else
                        hi = mid;
                }
                z_lo = 0.5 * (lo + hi);
                break;
            }
        }
        break;
    }

    if (std::isnan(z_hi) || std::isnan(z_lo)) return {0.0, kTwoPi, false};  // whole circle

    const double lo_n = wrap_angle(z_lo);
    const double hi_n = wrap_angle(z_hi);
    return {lo_n, hi_n, lo_n > hi_n};
}

CaptureSolution solve_phase2(const GameState& s, const GameParams& p) {
    const FeasibleDomain dom = bracket_feasible_domain(s, p);

    double theta_star;
    double t_f;
    if (dom.whole_circle()) {
        // Ternary search needs endpoints; seed golden-section refinement from
        // the best of a uniform grid instead.
        constexpr int kGrid = 2000;
        int arg = 0;
        double best = kNegInf;
        for (int k = 0; k < kGrid; ++k) {
            const double th = kTwoPi * k / kGrid;
            const double v = objective(s, th, p);
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        const double th0 = kTwoPi * arg / kGrid;
        theta_star = golden_max(s, p, th0 - kTwoPi / kGrid, th0 + kTwoPi / kGrid);
        t_f = objective(s, theta_star, p);
    } else {
        // Unroll the (possibly wrapped) arc to a contiguous interval. The
        // saturation-validity cut can carve unusable patches out of the arc,
        // so seed the refinement from a grid scan instead of trusting
        // unimodality across the whole interval.
        const double lo = dom.theta_lo;
        const double hi = dom.theta_lo + dom.arc_length();
        constexpr int kArcGrid = 512;
        int arg = -1;
        double best = kNegInf;
        for (int k = 0; k <= kArcGrid; ++k) {
            const double th = lo + (hi - lo) * k / kArcGrid;
            const double v = objective(s, th, p);
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        if (arg < 0 || !std::isfinite(best)) {
            theta_star = lo;
            t_f = kNegInf;  // trips the global-scan fallback below
        } else {
            const double spacing = (hi - lo) / kArcGrid;
            const double th0 = lo + spacing * arg;
            theta_star = ternary_max(s, p, std::max(lo, th0 - spacing),
                                     std::min(hi, th0 + spacing));
            t_f = objective(s, theta_star, p);
            if (!(t_f >= best)) {  // refinement must never regress the seed
                theta_star = th0;
                t_f = best;
            }
        }
    }

    if (!std::isfinite(t_f) || t_f <= 0.0) {
        // The anchored arc admits no usable guaranteed time; search the whole
        // circle for one.
        const auto arc = best_heading_by_global_scan(s, p);
        theta_star = arc.theta;
        t_f = arc.t_f;
    }

    const PQTerms pq = pq_terms(s, theta_star, p);
    CaptureSolution sol;
    sol.t_f = t_f;
    sol.capture_point = {pq.p_x * t_f + pq.q_x + s.x_E, pq.p_y * t_f + pq.q_y + s.y_E};
    sol.theta_P_star = wrap_angle(theta_star);
    sol.theta_E_star =
        wrap_angle(std::atan2(sol.capture_point.y - s.y_E, sol.capture_point.x - s.x_E));
    sol.phase = Phase::PostSaturation;
    sol.t_theta_star = pq.t_theta;
    return sol;
}

Vec2 reachable_point_post_saturation(const GameState& s, double theta_P, double t,
                                     const GameParams& p) {
    const double t_theta = saturation_time(s, theta_P, p);
    if (t < t_theta - 1e-12)
        throw InfeasibleError(
            "reachable_point_post_saturation: time precedes saturation along this heading");
    const double f = 2.0 * t * t_theta - t_theta * t_theta;
    return {s.x_P + s.v_Px * t + 0.5 * p.a_P_max * std::cos(theta_P) * f,
            s.y_P + s.v_Py * t + 0.5 * p.a_P_max * std::sin(theta_P) * f};
}

}  // namespace pegame
