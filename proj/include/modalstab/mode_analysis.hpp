#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "modalstab/coefficients.hpp"

namespace modalstab {

/// Everything known about one mode: eigenvalue, input and output coefficients,
/// and how confidently each coefficient is zero or not.
struct ModeRecord {
    int n = 0;
    double lambda = 0.0;
    double b = 0.0;
    double c = 0.0;
    ZeroCertainty b_zero;
    ZeroCertainty c_zero;
};

/// Residue-class description of an index set valid for every n >= 1:
/// membership iff n mod period is in residues (residues lie in [0, period)).
struct PeriodicPattern {
    std::int64_t period = 1;
    std::vector<std::int64_t> residues;

    bool contains(std::int64_t n) const noexcept;
    /// Smallest member >= 1, or nullopt when residues is empty.
    std::optional<std::int64_t> min_member() const noexcept;
};

/// Windowed index sets plus, when available, all-n residue descriptions.
/// controllable/uncontrollable partition [1, window]; k_set holds the modes
/// that reach the output but not the input.
struct IndexSetSummary {
    int window = 0;
    std::vector<int> controllable;    // b_n != 0
    std::vector<int> uncontrollable;  // b_n == 0
    std::vector<int> observable;      // c_n != 0
    std::vector<int> k_set;           // c_n != 0 and b_n == 0

    std::optional<PeriodicPattern> periodic_b_zero;
    std::optional<PeriodicPattern> periodic_c_zero;
    std::optional<PeriodicPattern> periodic_k;
};

enum class Answer { yes, yes_up_to, no, unknown };
enum class Certainty { exact, numeric };

const char* to_string(Answer answer) noexcept;
const char* to_string(Certainty certainty) noexcept;

struct VerdictComponent {
    Answer answer = Answer::yes;
    Certainty certainty = Certainty::exact;
    std::optional<std::int64_t> witness;   // mode index for "no"
    std::optional<int> window;             // analysis window for "yes_up_to"
    std::vector<int> borderline_modes;     // consulted modes too close to the cut
};

struct Verdict {
    VerdictComponent approx_controllable;
    VerdictComponent state_stabilizable;
    VerdictComponent output_stabilizable;
};

/// Per-mode records for n = 1..window. Requires window >= n_max_unstable so
/// every potentially unstable mode is covered.
std::vector<ModeRecord> classify_modes(const SystemParams& params, const Profile& b,
                                       const Profile& c, int window,
                                       const ThresholdPolicy& policy = {},
                                       const QuadratureSettings& settings = {});

/// Index sets from the records. The all-n periodic descriptions are attached
/// iff alpha = 0 and both profiles are indicators; the period of the k set is
/// the lcm of the two zero-pattern periods.
IndexSetSummary build_index_sets(const SystemParams& params, const std::vector<ModeRecord>& records,
                                 const Profile& b, const Profile& c);

/// Output stabilizability: "no" iff some mode in the k set has a nonnegative
/// eigenvalue. Only modes up to n_max_unstable need consulting, so the
/// decision is finite; certainty is exact iff every consulted classification is.
VerdictComponent decide_output_stabilizability(const SystemParams& params,
                                               const std::vector<ModeRecord>& records,
                                               const IndexSetSummary& summary);

/// State stabilizability: "no" iff some unreachable mode (b_n = 0) has a
/// nonnegative eigenvalue.
VerdictComponent decide_state_stabilizability(const SystemParams& params,
                                              const std::vector<ModeRecord>& records,
                                              const IndexSetSummary& summary);

/// Approximate controllability: "no" on any vanishing b_n; "yes" exactly when
/// a periodic zero pattern exists and is empty; otherwise "yes up to" the
/// window.
VerdictComponent decide_approx_controllability(const std::vector<ModeRecord>& records,
                                               const IndexSetSummary& summary);

/// Supremum of reaction rates k that keep the output stabilizable:
/// alpha^2/4 + (min K)^2 pi^2, or +infinity when the k set is empty.
double critical_k(const SystemParams& params, const IndexSetSummary& summary);

/// One-call pipeline used by the commands and bindings.
struct SystemAnalysis {
    SystemParams params;
    int window = 0;
    std::vector<ModeRecord> records;
    IndexSetSummary summary;
    Verdict verdict;
    double critical_k = 0.0;  // +infinity when the k set is empty
};

/// Default analysis window: max(64, 2 * n_max_unstable).
int default_window(const SystemParams& params);

SystemAnalysis analyze_system(const SystemParams& params, const Profile& b, const Profile& c,
                              std::optional<int> window = std::nullopt,
                              const ThresholdPolicy& policy = {},
                              const QuadratureSettings& settings = {});

}  // namespace modalstab
