#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "modalstab/config.hpp"
#include "modalstab/report.hpp"

namespace modalstab {

/// Exit-code contract shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;       // internal / numeric / config failure
inline constexpr int kExitAssertion = 3;   // assertion-style verdict failure

struct CommandOptions {
    bool closed_loop = false;
    bool best_effort = false;
    bool assert_output_stabilizable = false;
    std::string out_dir = ".";

    // sweep controls
    double k_min = 0.0;
    double k_max = 50.0;
    int steps = 51;
    bool refine = false;
    int threads = 0;  // 0 picks the hardware concurrency
};

/// Sweep engine: output-stabilizability verdict per grid point, the bracketing
/// interval around the flip, and the bisection-refined boundary when asked.
/// Grid points are evaluated concurrently; rows come back ordered by k.
SweepSummary sweep_output_stabilizability(const RunConfig& config, double k_min, double k_max,
                                          int steps, bool refine, int threads = 0);

/// The four commands. Each writes report.json (plus command-specific files)
/// into out_dir, prints the human report to `out`, and returns an exit code.
int run_analyze(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                std::ostream& err);
int run_synthesize(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                   std::ostream& err);
int run_simulate(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                 std::ostream& err);
int run_sweep(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
              std::ostream& err);

}  // namespace modalstab
