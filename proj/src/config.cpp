#include "modalstab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + text + "'");
    }
    if (used != text.size()) throw ConfigError("trailing characters in number: '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError("number must be finite: '" + text + "'");
    return v;
}

int parse_int(const std::string& text) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + text + "'");
    }
    if (used != text.size()) {
        throw ConfigError("trailing characters in integer: '" + text + "'");
    }
    if (v < -1'000'000'000L || v > 1'000'000'000L) {
        throw ConfigError("integer out of range: '" + text + "'");
    }
    return static_cast<int>(v);
}


}  // namespace

Profile parse_profile_descriptor(const std::string& value) {
    const std::vector<std::string> tok = split_ws(value);
    if (tok.empty()) throw ConfigError("empty profile descriptor");
    if (tok[0] == "indicator") {
        if (tok.size() != 3) {
            throw ConfigError("indicator needs two rational endpoints, e.g. 'indicator 1/4 3/4'");
        }
        return Profile::indicator(Rational::parse(tok[1]), Rational::parse(tok[2]));
    }
    if (tok[0] == "tabulated") {
        if (tok.size() < 3) {
            throw ConfigError("tabulated needs at least two x:value pairs");
        }
        std::vector<double> nodes;
        std::vector<double> values;
        for (std::size_t i = 1; i < tok.size(); ++i) {
            const auto colon = tok[i].find(':');
            if (colon == std::string::npos) {
                throw ConfigError("tabulated entry '" + tok[i] + "' is not x:value");
            }
            nodes.push_back(parse_double(tok[i].substr(0, colon)));
            values.push_back(parse_double(tok[i].substr(colon + 1)));
        }
        return Profile::tabulated(std::move(nodes), std::move(values));
    }
    throw ConfigError("unknown profile kind '" + tok[0] + "' (want indicator or tabulated)");
}

double parse_reaction_rate(const std::string& text) {
    const std::string t = trim(text);
    const std::string suffix = "pi^2";
    if (t.size() >= suffix.size() &&
        t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
        std::string prefix = trim(t.substr(0, t.size() - suffix.size()));
        if (!prefix.empty() && prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
        if (prefix.empty()) return kPiSq;
        if (prefix == "-") return -kPiSq;
        // Exact rational multiples keep e.g. 5*pi^2 faithful to the eigenvalue
        // grid; fall back to a decimal factor otherwise.
        try {
            return Rational::parse(prefix).value() * kPiSq;
        } catch (const ConfigError&) {
            return parse_double(prefix) * kPiSq;
        }
    }
    return parse_double(t);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::set<std::string> seen;
    std::optional<double> alpha;
    std::optional<double> k;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + trim(raw) + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto fail = [&](const std::string& msg) -> ConfigError {
            return ConfigError(origin + ":" + std::to_string(line_no) + ": key '" + key +
                               "': " + msg);
        };
        if (key.empty()) throw fail("empty key");
        if (value.empty()) throw fail("empty value");
        if (!seen.insert(key).second) throw fail("duplicate key");
        config.echo.emplace_back(key, value);

        try {
            if (key == "system.alpha") {
                alpha = parse_double(value);
            } else if (key == "system.k") {
                k = parse_reaction_rate(value);
            } else if (key == "system.alpha_cap") {
                config.alpha_cap = parse_double(value);
            } else if (key == "profile.b") {
                config.b = parse_profile_descriptor(value);
            } else if (key == "profile.c") {
                config.c = parse_profile_descriptor(value);
            } else if (key == "analysis.window") {
                config.window = parse_int(value);
                if (*config.window < 1) throw ConfigError("window must be >= 1");
            } else if (key == "analysis.zero_rel_threshold") {
                config.policy.tau_rel = parse_double(value);
                if (!(config.policy.tau_rel > 0.0)) {
                    throw ConfigError("zero_rel_threshold must be positive");
                }
            } else if (key == "feedback.targets") {
                for (const std::string& tok : split_ws(value)) {
                    const double mu = parse_double(tok);
                    if (!(mu < 0.0)) {
                        throw ConfigError("targets must be strictly negative, got '" + tok + "'");
                    }
                    config.feedback_targets.push_back(mu);
                }
            } else if (key == "simulate.t_final") {
                config.t_final = parse_double(value);
                if (!(config.t_final > 0.0)) throw ConfigError("t_final must be positive");
            } else if (key == "simulate.dt") {
                config.dt = parse_double(value);
                if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
            } else if (key == "simulate.truncation") {
                config.truncation = parse_int(value);
                if (config.truncation < 1) throw ConfigError("truncation must be >= 1");
            } else if (key == "simulate.initial") {
                const std::vector<std::string> tok = split_ws(value);
                if (!tok.empty() && tok[0] == "mode") {
                    if (tok.size() != 2) throw ConfigError("want 'mode <n>'");
                    config.initial.mode = parse_int(tok[1]);
                    if (*config.initial.mode < 1) throw ConfigError("mode index must be >= 1");
                    config.initial.profile.reset();
                } else {
                    config.initial.profile = parse_profile_descriptor(value);
                    config.initial.mode.reset();
                }
            } else {
                throw ConfigError("unknown key");
            }
        } catch (const ConfigError& e) {
            const std::string prefix = origin + ":" + std::to_string(line_no);
            const std::string what = e.what();
            if (what.rfind(prefix, 0) == 0) throw;  // already located
            throw fail(what);
        }
    }

    if (!alpha) throw ConfigError(origin + ": missing required key system.alpha");
    if (!k) throw ConfigError(origin + ": missing required key system.k");
    if (!config.b) throw ConfigError(origin + ": missing required key profile.b");
    if (!config.c) throw ConfigError(origin + ": missing required key profile.c");
    config.params = SystemParams(*alpha, *k);
    if (!config.initial.mode && !config.initial.profile) config.initial.mode = 1;
    if (config.initial.mode && *config.initial.mode > config.truncation) {
        throw ConfigError(origin + ": simulate.initial mode " +
                          std::to_string(*config.initial.mode) +
                          " exceeds simulate.truncation " + std::to_string(config.truncation));
    }
    return config;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace modalstab
