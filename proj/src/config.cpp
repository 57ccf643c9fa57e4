#include "pegame/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pegame {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config: key '" + key + "' has malformed numeric value '" + value +
                              "'");
    }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ValidationError("config: key '" + key + "' has malformed integer value '" + value +
                              "'");
    }
}

// Round-trip precision for config files: re-reading a written config must
// reproduce each double bit-for-bit, which needs 17 significant digits.
std::string format_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string pursuer_policy_name(PursuerPolicy p) {
    return p == PursuerPolicy::Optimal ? "optimal" : "pure_pursuit";
}

std::string evader_policy_name(EvaderPolicy e) {
    return e == EvaderPolicy::Optimal ? "optimal" : "pure_evasion";
}

std::string replan_mode_name(ReplanMode m) {
    return m == ReplanMode::EveryStep ? "every_step" : "open_loop";
}

PursuerPolicy parse_pursuer_policy(const std::string& s) {
    if (s == "optimal") return PursuerPolicy::Optimal;
    if (s == "pure_pursuit") return PursuerPolicy::PurePursuit;
    throw ValidationError("config: pursuer must be 'optimal' or 'pure_pursuit', got '" + s + "'");
}

EvaderPolicy parse_evader_policy(const std::string& s) {
    if (s == "optimal") return EvaderPolicy::Optimal;
    if (s == "pure_evasion") return EvaderPolicy::PureEvasion;
    throw ValidationError("config: evader must be 'optimal' or 'pure_evasion', got '" + s + "'");
}

ReplanMode parse_replan_mode(const std::string& s) {
    if (s == "every_step") return ReplanMode::EveryStep;
    if (s == "open_loop") return ReplanMode::OpenLoop;
    throw ValidationError("config: replan must be 'every_step' or 'open_loop', got '" + s + "'");
}

void ScenarioConfig::validate() const {
    params.validate();
    if (!initial_state.finite())
        throw ValidationError("config: initial state has non-finite fields");
    require_admissible_speed(initial_state, params);
    if (!std::isfinite(dt) || dt <= 0.0) throw ValidationError("config: dt must be positive");
    if (!std::isfinite(horizon) || horizon <= 0.0)
        throw ValidationError("config: horizon must be positive");
    if (dt > horizon) throw ValidationError("config: dt must not exceed horizon");
}

ScenarioConfig preset_config(const std::string& name) {
    ScenarioConfig c;
    if (name == "scenario1") {
        c.initial_state = GameState{0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
        c.params.a_P_max = 1.0;
        c.params.v_P_max = 10.0;
        c.params.v_E_max = 0.5;
    } else if (name == "scenario2") {
        c.initial_state = GameState{0.0, 0.0, 0.0, 1.0, 5.0, 5.0};
        c.params.a_P_max = 1.0;
        c.params.v_P_max = 2.0;
        c.params.v_E_max = 0.5;
    } else {
        throw ValidationError("unknown preset '" + name + "' (expected scenario1 or scenario2)");
    }
    return c;
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "x_P")
            c.initial_state.x_P = parse_double(key, value);
        else if (key == "y_P")
            c.initial_state.y_P = parse_double(key, value);
        else if (key == "v_Px")
            c.initial_state.v_Px = parse_double(key, value);
        else if (key == "v_Py")
            c.initial_state.v_Py = parse_double(key, value);
        else if (key == "x_E")
            c.initial_state.x_E = parse_double(key, value);
        else if (key == "y_E")
            c.initial_state.y_E = parse_double(key, value);
        else if (key == "a_P_max")
            c.params.a_P_max = parse_double(key, value);
        else if (key == "v_P_max")
            c.params.v_P_max = parse_double(key, value);
        else if (key == "v_E_max")
            c.params.v_E_max = parse_double(key, value);
        else if (key == "tol_speed")
            c.params.tol_speed = parse_double(key, value);
        else if (key == "capture_radius")
            c.params.capture_radius = parse_double(key, value);
        else if (key == "pursuer")
            c.policies.pursuer = parse_pursuer_policy(value);
        else if (key == "evader")
            c.policies.evader = parse_evader_policy(value);
        else if (key == "replan")
            c.replan = parse_replan_mode(value);
        else if (key == "dt")
            c.dt = parse_double(key, value);
        else if (key == "horizon")
            c.horizon = parse_double(key, value);
        else if (key == "seed")
            c.seed = parse_seed(key, value);
        else if (key == "output_path")
            c.output_path = value;
        else
            throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
    }
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_text(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "x_P = " << format_exact(c.initial_state.x_P) << "\n";
    out << "y_P = " << format_exact(c.initial_state.y_P) << "\n";
    out << "v_Px = " << format_exact(c.initial_state.v_Px) << "\n";
    out << "v_Py = " << format_exact(c.initial_state.v_Py) << "\n";
    out << "x_E = " << format_exact(c.initial_state.x_E) << "\n";
    out << "y_E = " << format_exact(c.initial_state.y_E) << "\n";
    out << "a_P_max = " << format_exact(c.params.a_P_max) << "\n";
    out << "v_P_max = " << format_exact(c.params.v_P_max) << "\n";
    out << "v_E_max = " << format_exact(c.params.v_E_max) << "\n";
    out << "tol_speed = " << format_exact(c.params.tol_speed) << "\n";
    out << "capture_radius = " << format_exact(c.params.capture_radius) << "\n";
    out << "pursuer = " << pursuer_policy_name(c.policies.pursuer) << "\n";
    out << "evader = " << evader_policy_name(c.policies.evader) << "\n";
    out << "replan = " << replan_mode_name(c.replan) << "\n";
    out << "dt = " << format_exact(c.dt) << "\n";
    out << "horizon = " << format_exact(c.horizon) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "output_path = " << c.output_path << "\n";
    return out.str();
}

void save_config_file(const ScenarioConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write config file '" + path + "'");
    out << config_to_text(c);
}

}  // namespace pegame
