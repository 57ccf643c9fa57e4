#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pegame/config.hpp"
#include "pegame/hji_verification.hpp"
#include "pegame/random_states.hpp"
#include "pegame/simulation.hpp"
#include "pegame/strategy_solver.hpp"

namespace {

using namespace pegame;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitTolerance = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out;
    double dt = 0.0;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    CLI::Option* o_config = nullptr;
    CLI::Option* o_preset = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_dt = nullptr;
    CLI::Option* o_horizon = nullptr;
    CLI::Option* o_seed = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    c.o_config = cmd->add_option("--config", c.config_path,
                                 "Path to a flat key=value scenario config file");
    c.o_preset = cmd->add_option("--preset", c.preset, "Built-in scenario (scenario1, scenario2)")
                     ->check(CLI::IsMember({"scenario1", "scenario2"}));
    c.o_dt = cmd->add_option("--dt", c.dt, "Integration time step");
    c.o_horizon = cmd->add_option("--horizon", c.horizon, "Simulation horizon");
    c.o_seed = cmd->add_option("--seed", c.seed, "Random seed for sweeps");
    c.o_out = cmd->add_option("--out", c.out, "Output directory for generated files");
    c.o_config->excludes(c.o_preset);
}

ScenarioConfig build_config(const CommonOpts& c, bool require_source) {
    ScenarioConfig cfg;
    if (c.o_config->count() > 0)
        cfg = load_config_file(c.config_path);
    else if (c.o_preset->count() > 0)
        cfg = preset_config(c.preset);
    else if (require_source)
        throw ValidationError("provide --preset or --config to define the scenario");
    else
        cfg = preset_config("scenario1");
    if (c.o_dt->count() > 0) cfg.dt = c.dt;
    if (c.o_horizon->count() > 0) cfg.horizon = c.horizon;
    if (c.o_seed->count() > 0) cfg.seed = c.seed;
    if (c.o_out->count() > 0) cfg.output_path = c.out;
    cfg.validate();
    return cfg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file '" + path.string() + "'");
    out << content;
}

std::string state_echo(const GameState& s, const GameParams& p) {
    std::ostringstream os;
    os.precision(17);
    os << "x_P=" << s.x_P << " y_P=" << s.y_P << " v_Px=" << s.v_Px << " v_Py=" << s.v_Py
       << " x_E=" << s.x_E << " y_E=" << s.y_E << " a_P_max=" << p.a_P_max
       << " v_P_max=" << p.v_P_max << " v_E_max=" << p.v_E_max;
    return os.str();
}

// ---------------------------------------------------------------- solve ----

std::string solve_record(const SolverResult& sr) {
    std::ostringstream os;
    os << "t_f = " << format_g9(sr.solution.t_f) << "\n";
    os << "phase = " << phase_name(sr.solution.phase) << "\n";
    os << "theta_P_star = " << format_g9(sr.solution.theta_P_star) << "\n";
    os << "theta_E_star = " << format_g9(sr.solution.theta_E_star) << "\n";
    os << "capture_point_x = " << format_g9(sr.solution.capture_point.x) << "\n";
    os << "capture_point_y = " << format_g9(sr.solution.capture_point.y) << "\n";
    os << "t_theta_star = " << format_g9(sr.solution.t_theta_star) << "\n";
    os << "candidates_examined = " << sr.candidates_examined.size() << "\n";
    for (size_t i = 0; i < sr.candidates_examined.size(); ++i) {
        os << "candidate_" << (i + 1) << "_t = " << format_g9(sr.candidates_examined[i].first)
           << "\n";
        os << "candidate_" << (i + 1)
           << "_t_theta = " << format_g9(sr.candidates_examined[i].second) << "\n";
    }
    return os.str();
}

int run_solve(const ScenarioConfig& cfg, bool write_out) {
    const SolverResult sr = solve(cfg.initial_state, cfg.params);
    const std::string record = solve_record(sr);
    std::cout << record;
    if (write_out) {
        std::filesystem::create_directories(cfg.output_path);
        write_text_file(std::filesystem::path(cfg.output_path) / "solution.txt", record);
    }
    return kExitOk;
}

// ------------------------------------------------------------- simulate ----

std::string trajectory_tsv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t\tx_P\ty_P\tv_Px\tv_Py\tx_E\ty_E\ta_P\ttheta_P\tv_E\ttheta_E\n";
    for (const TrajectorySample& s : traj.samples) {
        os << format_g9(s.t) << '\t' << format_g9(s.state.x_P) << '\t' << format_g9(s.state.y_P)
           << '\t' << format_g9(s.state.v_Px) << '\t' << format_g9(s.state.v_Py) << '\t'
           << format_g9(s.state.x_E) << '\t' << format_g9(s.state.y_E) << '\t'
           << format_g9(s.command.a_P) << '\t' << format_g9(s.command.theta_P) << '\t'
           << format_g9(s.command.v_E) << '\t' << format_g9(s.command.theta_E) << '\n';
    }
    return os.str();
}

std::string simulate_summary(const Trajectory& traj) {
    std::ostringstream os;
    os << "outcome = " << (traj.captured ? "Captured" : "TimedOut") << "\n";
    os << "t_outcome = " << format_g9(traj.t_outcome) << "\n";
    os << "rows = " << traj.samples.size() << "\n";
    os << "final_separation = " << format_g9(separation(traj.final_state)) << "\n";
    return os.str();
}

int run_simulate(const ScenarioConfig& cfg) {
    const Trajectory traj = run_game(cfg.initial_state, cfg.params, cfg.policies, cfg.dt,
                                     cfg.horizon, cfg.replan);
    const std::string summary = simulate_summary(traj);
    std::filesystem::create_directories(cfg.output_path);
    const std::filesystem::path dir(cfg.output_path);
    write_text_file(dir / "trajectory.tsv", trajectory_tsv(traj));
    write_text_file(dir / "summary.txt", summary);
    std::cout << summary;
    return kExitOk;
}

// --------------------------------------------------------------- verify ----

int run_verify(const ScenarioConfig& cfg, int sweep, bool inject_fault, bool write_out) {
    if (sweep < 2) throw ValidationError("--sweep must be at least 2");
    std::mt19937_64 rng(cfg.seed);

    // Stationarity residual over random states, alternating branches.
    double max_resid = 0.0;
    std::string worst_resid_echo;
    int n1 = 0, n2 = 0;
    for (int i = 0; i < sweep; ++i) {
        const RandomScenario rs =
            (i % 2 == 0) ? random_scenario_phase1(rng) : random_scenario_phase2(rng);
        (i % 2 == 0 ? n1 : n2) += 1;
        const double r = std::fabs(hji_residual(rs.state, rs.params));
        if (r > max_resid) {
            max_resid = r;
            worst_resid_echo = state_echo(rs.state, rs.params);
        }
    }

    // Analytic gradient against the central-difference oracle, per branch.
    const int grad_per_phase = std::max(1, (2 * sweep) / 5);
    double max_grad_err[2] = {0.0, 0.0};
    std::string worst_grad_echo[2];
    for (int phase_idx = 0; phase_idx < 2; ++phase_idx) {
        const bool phase1 = phase_idx == 0;
        const double fd_step = phase1 ? 1e-6 : 1e-5;
        for (int i = 0; i < grad_per_phase; ++i) {
            const RandomScenario rs =
                phase1 ? random_scenario_phase1(rng) : random_scenario_phase2(rng);
            (phase1 ? n1 : n2) += 1;
            const SolverResult sr = solve(rs.state, rs.params);
            ValueGradient g = sr.solution.phase == Phase::PreSaturation
                                  ? gradient_phase1(rs.state, sr.solution, rs.params)
                                  : gradient_phase2(rs.state, sr.solution, rs.params);
            if (inject_fault) g.dV_dxP += 1e-3;
            const ValueGradient fd = finite_difference_gradient(rs.state, rs.params, fd_step);
            const double err = gradient_relative_error(g, fd);
            if (err > max_grad_err[phase_idx]) {
                max_grad_err[phase_idx] = err;
                worst_grad_echo[phase_idx] = state_echo(rs.state, rs.params);
            }
        }
    }

    // Branch continuity along a top-speed sweep that crosses the switch.
    // The sweep starts above the state's own speed (1.0) so every member of
    // the family is admissible; the switch sits near v_P_max = 1.71.
    const GameState s1{0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    const StateFamily family = [s1](double v_P_max) {
        GameParams p;
        p.a_P_max = 1.0;
        p.v_P_max = v_P_max;
        p.v_E_max = 0.5;
        return std::make_pair(s1, p);
    };
    const SwitchContinuityReport srep = switch_continuity_check(family, 1.2, 10.0);

    const bool ok = max_resid <= 1e-5 && max_grad_err[0] <= 1e-4 && max_grad_err[1] <= 1e-4 &&
                    srep.value_jump <= 1e-5 && srep.theta_gap <= 1e-4;

    std::ostringstream os;
    os << "seed = " << cfg.seed << "\n";
    os << "sweep = " << sweep << "\n";
    os << "phase1_states_checked = " << n1 << "\n";
    os << "phase2_states_checked = " << n2 << "\n";
    os << "max_hji_residual = " << format_g9(max_resid) << "\n";
    os << "max_gradient_rel_error_phase1 = " << format_g9(max_grad_err[0]) << "\n";
    os << "max_gradient_rel_error_phase2 = " << format_g9(max_grad_err[1]) << "\n";
    os << "switch_param_at_crossing = " << format_g9(srep.param_at_crossing) << "\n";
    os << "switch_value_jump = " << format_g9(srep.value_jump) << "\n";
    os << "switch_theta_gap = " << format_g9(srep.theta_gap) << "\n";
    os << "result = " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) {
        if (max_resid > 1e-5) os << "worst_residual_state = " << worst_resid_echo << "\n";
        if (max_grad_err[0] > 1e-4)
            os << "worst_gradient_state_phase1 = " << worst_grad_echo[0] << "\n";
        if (max_grad_err[1] > 1e-4)
            os << "worst_gradient_state_phase2 = " << worst_grad_echo[1] << "\n";
    }
    const std::string report = os.str();
    std::cout << report;
    if (write_out) {
        std::filesystem::create_directories(cfg.output_path);
        write_text_file(std::filesystem::path(cfg.output_path) / "verify_report.txt", report);
    }
    return ok ? kExitOk : kExitTolerance;
}

// --------------------------------------------------------------- table1 ----

bool tail_separation_non_decreasing(const Trajectory& traj) {
    const size_t n = traj.samples.size();
    if (n < 2) return false;
    const size_t start = static_cast<size_t>(0.8 * static_cast<double>(n));
    double prev = separation(traj.samples[start].state);
    for (size_t i = start + 1; i < n; ++i) {
        const double cur = separation(traj.samples[i].state);
        if (cur - prev < -1e-12) return false;
        prev = cur;
    }
    return true;
}

int run_table1(double dt, double horizon, const std::string& out_dir) {
    struct Cell {
        const char* scenario;
        PursuerPolicy pursuer;
        EvaderPolicy evader;
        double reference;  // infinity marks an expected-divergent pairing
    };
    const Cell cells[] = {
        {"scenario1", PursuerPolicy::Optimal, EvaderPolicy::Optimal, 2.437},
        {"scenario1", PursuerPolicy::Optimal, EvaderPolicy::PureEvasion, 2.155},
        {"scenario1", PursuerPolicy::PurePursuit, EvaderPolicy::Optimal,
         std::numeric_limits<double>::infinity()},
        {"scenario2", PursuerPolicy::Optimal, EvaderPolicy::Optimal, 5.407},
        {"scenario2", PursuerPolicy::Optimal, EvaderPolicy::PureEvasion, 5.397},
        {"scenario2", PursuerPolicy::PurePursuit, EvaderPolicy::Optimal,
         std::numeric_limits<double>::infinity()},
    };
    const double tol = std::max(2.0 * dt, 5e-3);

    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %-13s %-13s %-10s %-12s %-10s %s\n", "scenario",
                  "pursuer", "evader", "reference", "computed", "tolerance", "status");
    os << line;
    bool all_ok = true;
    for (const Cell& cell : cells) {
        ScenarioConfig cfg = preset_config(cell.scenario);
        cfg.dt = dt;
        cfg.horizon = horizon;
        const Trajectory traj = run_game(cfg.initial_state, cfg.params,
                                         PolicyKind{cell.pursuer, cell.evader}, dt, horizon,
                                         ReplanMode::EveryStep);
        std::string computed, status;
        if (std::isinf(cell.reference)) {
            const bool ok = !traj.captured && tail_separation_non_decreasing(traj);
            all_ok = all_ok && ok;
            computed = traj.captured ? format_g9(traj.t_outcome) : "TimedOut";
            status = ok ? "PASS" : "FAIL";
        } else {
            const bool ok = traj.captured && std::fabs(traj.t_outcome - cell.reference) <= tol;
            all_ok = all_ok && ok;
            computed = traj.captured ? format_g9(traj.t_outcome) : "TimedOut";
            status = ok ? "PASS" : "FAIL";
        }
        std::snprintf(line, sizeof(line), "%-10s %-13s %-13s %-10s %-12s %-10s %s\n",
                      cell.scenario, pursuer_policy_name(cell.pursuer).c_str(),
                      evader_policy_name(cell.evader).c_str(),
                      std::isinf(cell.reference) ? "inf" : format_g9(cell.reference).c_str(),
                      computed.c_str(), format_g9(tol).c_str(), status.c_str());
        os << line;
    }
    const std::string table = os.str();
    std::cout << table;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_text_file(std::filesystem::path(out_dir) / "table1.txt", table);
    }
    return all_ok ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pursuit-evasion capture-time solver and closed-loop simulator"};
    app.require_subcommand(1);

    CommonOpts so, mo, vo, to;
    CLI::App* c_solve = app.add_subcommand(
        "solve", "Solve one engagement and print the optimal-strategy record");
    add_common(c_solve, so);
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "Integrate the closed-loop game and write trajectory files");
    add_common(c_sim, mo);
    CLI::App* c_verify = app.add_subcommand(
        "verify", "Run stationarity-residual, gradient-oracle, and branch-continuity sweeps");
    add_common(c_verify, vo);
    int sweep = 500;
    c_verify->add_option("--sweep", sweep, "Number of random states in the residual sweep");
    bool inject_fault = false;
    c_verify->add_flag("--inject-fault", inject_fault)->group("");
    CLI::App* c_table = app.add_subcommand(
        "table1", "Reproduce the capture-time table for both built-in scenarios");
    add_common(c_table, to);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (c_solve->parsed()) return run_solve(build_config(so, true), so.o_out->count() > 0);
        if (c_sim->parsed()) return run_simulate(build_config(mo, true));
        if (c_verify->parsed())
            return run_verify(build_config(vo, false), sweep, inject_fault, vo.o_out->count() > 0);
        if (c_table->parsed()) {
            const double dt = to.o_dt->count() > 0 ? to.dt : 1e-3;
            const double horizon = to.o_horizon->count() > 0 ? to.horizon : 50.0;
            return run_table1(dt, horizon, to.o_out->count() > 0 ? to.out : std::string{});
        }
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InfeasibleError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const NumericError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
