#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modalstab/config.hpp"
#include "modalstab/feedback.hpp"
#include "modalstab/mode_analysis.hpp"
#include "modalstab/simulate.hpp"

namespace modalstab {

inline constexpr const char* kToolName = "modalstab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Simulation facts echoed into the report next to the trajectory CSV.
struct SimulationSummary {
    bool closed_loop = false;
    bool best_effort = false;
    bool diverged = false;
    int truncation = 0;
    double t_final = 0.0;
    double dt = 0.0;
    std::size_t samples = 0;
    std::optional<double> fitted_rate;
    std::string trajectory_csv;
};

/// One sweep grid point: the output-stabilizability answer at reaction rate k.
struct SweepRow {
    double k = 0.0;
    Answer answer = Answer::yes;
    std::optional<std::int64_t> witness;
};

struct SweepSummary {
    std::vector<SweepRow> rows;
    std::optional<double> bracket_low;   // last k answering yes
    std::optional<double> bracket_high;  // first k answering no
    std::optional<double> refined_boundary;
    std::string sweep_csv;
};

/// Machine-readable report. Field names are a stable interface; the encoding
/// is JSON and round-trips to a fixed point.
nlohmann::ordered_json report_json(const RunConfig& config, const SystemAnalysis& analysis,
                                   const FeedbackLaw* law, const SpectrumReport* spectrum,
                                   const SimulationSummary* sim, const SweepSummary* sweep);

/// Human-readable rendering of the same facts.
std::string report_text(const RunConfig& config, const SystemAnalysis& analysis,
                        const FeedbackLaw* law, const SpectrumReport* spectrum,
                        const SimulationSummary* sim, const SweepSummary* sweep);

/// `t,y,u,state_norm` rows, 17 significant digits: lossless float round-trip.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// `k,output_stabilizable,witness` rows; the witness field is empty when the
/// answer carries none.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Shortest-lossless formatting used in CSV output (printf %.17g).
std::string format_double(double v);

}  // namespace modalstab
