#pragma once

#include <cstdint>
#include <string>

#include "pegame/core.hpp"
#include "pegame/simulation.hpp"

namespace pegame {

// Full description of one run: initial condition, player limits, strategy
// pairing, integration settings, and reproducibility knobs. Serialized as
// flat `key = value` text so configs stay grep-able and diff-able.
struct ScenarioConfig {
    GameState initial_state{};
    GameParams params{};
    PolicyKind policies{PursuerPolicy::Optimal, EvaderPolicy::Optimal};
    ReplanMode replan = ReplanMode::EveryStep;
    double dt = 1e-3;
    double horizon = 50.0;
    std::uint64_t seed = 42;
    std::string output_path = "out";

    // Throws ValidationError when any field combination is unusable.
    void validate() const;
};

// Named built-in configurations. Accepts "scenario1" or "scenario2"; throws
// ValidationError otherwise.
ScenarioConfig preset_config(const std::string& name);

// Flat key=value (de)serialization. Lines starting with '#' and blank lines
// are ignored; unknown keys or malformed numbers throw ValidationError.
// Writing then re-reading reproduces every field exactly: numeric values are
// emitted with round-trip precision.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);
std::string config_to_text(const ScenarioConfig& config);
void save_config_file(const ScenarioConfig& config, const std::string& path);

// Canonical textual names used in config files and reports.
std::string pursuer_policy_name(PursuerPolicy p);
std::string evader_policy_name(EvaderPolicy e);
std::string replan_mode_name(ReplanMode m);
PursuerPolicy parse_pursuer_policy(const std::string& s);
EvaderPolicy parse_evader_policy(const std::string& s);
ReplanMode parse_replan_mode(const std::string& s);

// Formats a double with 9 significant digits — the fixed precision used by
// every generated report so outputs diff cleanly across runs.
std::string format_g9(double v);

}  // namespace pegame
