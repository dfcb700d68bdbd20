#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modalstab/coefficients.hpp"
#include "modalstab/profile.hpp"
#include "modalstab/spectral.hpp"

namespace modalstab {

/// Initial condition for simulation: a unit mode or a spatial profile to
/// project.
struct InitialSpec {
    std::optional<int> mode;         // 1-based unit mode
    std::optional<Profile> profile;  // projected when set

    bool is_mode() const noexcept { return mode.has_value(); }
};

/// Parsed run configuration. Flat dotted-key text; see the grammar in the
/// README. Required keys: system.alpha, system.k, profile.b, profile.c.
struct RunConfig {
    SystemParams params;
    std::optional<Profile> b;
    std::optional<Profile> c;

    std::optional<int> window;          // analysis.window
    ThresholdPolicy policy;             // analysis.zero_rel_threshold
    std::vector<double> feedback_targets;

    double t_final = 8.0;
    double dt = 0.01;
    int truncation = 64;
    InitialSpec initial;                // defaults to mode 1
    double alpha_cap = kDefaultAlphaCap;

    /// Raw key/value lines in file order, echoed into reports.
    std::vector<std::pair<std::string, std::string>> echo;

    const Profile& b_profile() const { return *b; }
    const Profile& c_profile() const { return *c; }
};

/// Reaction-rate values accept exact multiples of pi^2 ("pi^2", "5*pi^2",
/// "-3/4 * pi^2", "2pi^2") besides plain decimals, so spectra like k = pi^2
/// are reproduced without decimal round-off games.
double parse_reaction_rate(const std::string& text);

/// Profile descriptor used by config values and the bindings:
/// "indicator <p> <q>" with exact rationals, or "tabulated <x>:<v> ...".
Profile parse_profile_descriptor(const std::string& text);

/// Parse and fully validate a config from text. Errors name the offending key
/// and line. `origin` labels the source in messages.
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Parse a config file.
RunConfig parse_config(const std::string& path);

}  // namespace modalstab
