#pragma once

#include <vector>

#include "modalstab/errors.hpp"
#include "modalstab/feedback.hpp"

namespace modalstab {

/// Truncated modal coordinates a_1..a_N of the state in the eigenfunction
/// basis.
struct ModalState {
    int N = 0;
    std::vector<double> a;

    ModalState() = default;
    ModalState(int N_, std::vector<double> a_);

    /// Unit mass on mode n, zero elsewhere.
    static ModalState unit_mode(int N, int n);

    double norm() const noexcept;
};

/// Sampled run: strictly increasing times starting at 0, with output, control,
/// and state-norm samples of equal length.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> y;
    std::vector<double> u;
    std::vector<double> state_norm;

    std::size_t size() const noexcept { return times.size(); }
};

/// The state norm crossed the divergence guard. Carries the rows accumulated
/// before the crossing so a growing run still produces evidence.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::move(partial)) {}

    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Norm guard: beyond this the run is declared divergent.
inline constexpr double kDivergenceGuard = 1e12;

/// Uniform grid of round(t_final / dt) steps covering [0, t_final] exactly;
/// the actual spacing is t_final divided by the step count.
std::vector<double> make_time_grid(double t_final, double dt);

/// a_n = <z0, phi_n>_H for n = 1..N.
ModalState project_initial(const Profile& z0, const SystemParams& params, int N,
                           const QuadratureSettings& settings = {});

/// Uncontrolled run: a_n(t) = exp(lambda_n t) a_n(0) with no time-stepping
/// error, y(t) = sum of c_n a_n(t), u identically 0.
Trajectory simulate_open_loop(const ModalState& state, const SystemParams& params,
                              const Profile& c, const std::vector<double>& t_grid,
                              const QuadratureSettings& settings = {});

/// The output restricted to an index set: sum over n in K (within the
/// truncation) of exp(lambda_n t) a_n(0) c_n.
double y2_series(const ModalState& state, const SystemParams& params,
                 const std::vector<int>& k_set, const Profile& c, double t,
                 const QuadratureSettings& settings = {});

/// Closed-loop run of order N >= max(law.support): per-step dense matrix
/// exponential of diag(lambda) + b f^T, exact for this linear system and
/// stable despite lambda_N ~ -N^2 pi^2. The initial state is zero-padded to
/// order N. Throws DivergenceError when the state norm exceeds the guard.
Trajectory simulate_closed_loop(const ModalState& state, const SystemParams& params,
                                const Profile& b, const Profile& c, const FeedbackLaw& law,
                                const std::vector<double>& t_grid, int N,
                                const QuadratureSettings& settings = {});

/// Same run keeping every modal snapshot (states[i] is a(t_i)), for
/// invariance checks on modes the feedback cannot reach.
struct DetailedRun {
    Trajectory trajectory;
    std::vector<std::vector<double>> states;
};

DetailedRun simulate_closed_loop_detailed(const ModalState& state, const SystemParams& params,
                                          const Profile& b, const Profile& c,
                                          const FeedbackLaw& law,
                                          const std::vector<double>& t_grid, int N,
                                          const QuadratureSettings& settings = {});

/// Field values z(xi) = sum of a_n phi_n(xi) on the grid. Refuses alpha above
/// the cap: the weight exp(alpha xi / 2) would overflow the reconstruction.
std::vector<double> reconstruct_field(const ModalState& state, const SystemParams& params,
                                      const std::vector<double>& xi_grid,
                                      double alpha_cap = kDefaultAlphaCap);

/// Least-squares slope of log|y| over the longest contiguous run of samples
/// with |y| > floor ending at the last such sample. Needs at least 10 usable
/// samples.
double estimate_decay_rate(const Trajectory& traj, double floor = 1e-12);

}  // namespace modalstab
