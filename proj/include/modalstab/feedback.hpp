#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "modalstab/mode_analysis.hpp"

namespace modalstab {

/// Finite-rank modal feedback u = sum over support of gain_n * a_n. Arrays are
/// aligned: gains[i] and targets[i] belong to support[i]. Every supported mode
/// has a nonzero input coefficient and every target is strictly negative.
struct FeedbackLaw {
    std::vector<int> support;
    std::vector<double> gains;
    std::vector<double> targets;

    bool empty() const noexcept { return support.empty(); }
    std::optional<double> gain_for(int n) const noexcept;
    /// u = sum of gains times the matching modal coordinates (1-based modes).
    double control(const std::vector<double>& a) const;
};

/// Pole targets for the supported modes. Explicit values are matched to the
/// support in increasing mode order and must all be strictly negative; without
/// them each unstable mode n gets mu_n = -max(1, |lambda_n| + 1), which keeps
/// the eigenvalue ordering and bounds the gains.
struct TargetPolicy {
    std::vector<double> explicit_targets;

    double target_for(double lambda) const noexcept;
};

/// Verification record for a synthesized law: the dense spectrum of the
/// truncated closed-loop matrix matched against what theory predicts.
struct SpectrumReport {
    std::vector<double> placed;     // achieved eigenvalues paired with targets
    std::vector<double> untouched;  // open-loop eigenvalues of modes outside S
    double max_real_part = 0.0;     // over the whole computed spectrum
    double max_placement_error = 0.0;
    double max_imag_part = 0.0;  // spectrum is real in theory; this is the residue
};

/// Modal feedback for S = {unstable n with b_n != 0}, placing the closed-loop
/// eigenvalues of those modes at the policy targets through the rank-one
/// pole-placement formula
///   f_n = -prod_j (lambda_n - mu_j) / (b_n * prod_{m in S, m != n} (lambda_n - lambda_m)).
/// An unstable mode with b_n = 0 defeats state stabilization: throws
/// NotStateStabilizableError with that witness unless best_effort, which
/// covers S and leaves the witness untouched. No unstable modes yields an
/// empty law.
FeedbackLaw synthesize(const SystemParams& params, const std::vector<ModeRecord>& records,
                       const TargetPolicy& policy = {}, bool best_effort = false);

/// Truncated closed-loop matrix diag(lambda) + b f^T of order N, with b_n from
/// the input profile and f supported on the law.
Eigen::MatrixXd closed_loop_matrix(const SystemParams& params, const Profile& b,
                                   const FeedbackLaw& law, int N,
                                   const QuadratureSettings& settings = {});

/// Dense eigensolve of the truncated closed-loop matrix, matched against the
/// predicted spectrum {targets} union {lambda_m : m outside S, m <= N}. The
/// prediction is exact in theory: modes outside S receive input but never feed
/// back, so the matrix is block triangular. Requires N >= max(S) and
/// N >= n_max_unstable.
SpectrumReport closed_loop_spectrum(const SystemParams& params, const Profile& b,
                                    const FeedbackLaw& law, int N,
                                    const QuadratureSettings& settings = {});

}  // namespace modalstab
