#include "pegame/random_states.hpp"

#include <cmath>

#include "pegame/strategy_solver.hpp"

namespace pegame {

namespace {

constexpr int kMaxAttempts = 20000;

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

GameState make_state(std::mt19937_64& rng, double v_P_max, double speed_frac_lo,
                     double speed_frac_hi, double dist_lo, double dist_hi, bool force_away) {
    GameState s{};
    s.x_P = uniform(rng, -2.0, 2.0);
    s.y_P = uniform(rng, -2.0, 2.0);
    const double de = uniform(rng, dist_lo, dist_hi);
    const double ae = uniform(rng, 0.0, kTwoPi);
    s.x_E = s.x_P + de * std::cos(ae);
    s.y_E = s.y_P + de * std::sin(ae);
    const double sp = v_P_max * uniform(rng, speed_frac_lo, speed_frac_hi);
    double av = uniform(rng, 0.0, kTwoPi);
    if (force_away) av = std::atan2(s.y_P - s.y_E, s.x_P - s.x_E);
    s.v_Px = sp * std::cos(av);
    s.v_Py = sp * std::sin(av);
    return s;
}

RandomScenario draw_with_phase(std::mt19937_64& rng, bool want_phase1, bool mixed,
                               bool force_away_half) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const bool phase1_bias = mixed ? (rng() & 1u) != 0 : want_phase1;
        const bool away = force_away_half && (rng() & 1u) != 0;
        RandomScenario rs;
        if (phase1_bias) {
            rs.params.a_P_max = uniform(rng, 0.8, 1.6);
            rs.params.v_P_max = uniform(rng, 6.0, 14.0);
            rs.params.v_E_max = uniform(rng, 0.1, 0.45);
            rs.state = make_state(rng, rs.params.v_P_max, 0.0, 0.35, 0.5, 6.0, away);
        } else {
            rs.params.a_P_max = uniform(rng, 0.6, 1.4);
            rs.params.v_P_max = uniform(rng, 1.2, 2.6);
            rs.params.v_E_max = std::min(uniform(rng, 0.15, 0.5), 0.45 * rs.params.v_P_max);
            rs.state = make_state(rng, rs.params.v_P_max, 0.3, 0.95, 3.0, 12.0, away);
        }
        try {
            const SolverResult sr = solve(rs.state, rs.params);
            if (!(sr.solution.t_f > 0.0) || !std::isfinite(sr.solution.t_f)) continue;
            if (!mixed) {
                const bool is1 = sr.solution.phase == Phase::PreSaturation;
                if (is1 != want_phase1) continue;
            }
            return rs;
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    throw NumericError("random scenario generation exhausted its attempt budget");
}

}  // namespace

RandomScenario random_scenario_phase1(std::mt19937_64& rng) {
    return draw_with_phase(rng, true, false, false);
}

RandomScenario random_scenario_phase2(std::mt19937_64& rng) {
    return draw_with_phase(rng, false, false, false);
}

RandomScenario random_scenario_any(std::mt19937_64& rng) {
    return draw_with_phase(rng, false, true, true);
}

}  // namespace pegame
