#include "modalstab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

void check_grid(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw ConfigError("time grid is empty");
    if (t_grid.front() != 0.0) throw ConfigError("time grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ConfigError("time grid must be strictly increasing");
        }
    }
    for (double t : t_grid) {
        if (!std::isfinite(t)) throw ConfigError("time grid must be finite");
    }
}

std::vector<double> output_coefficients(const SystemParams& params, const Profile& c, int N,
                                        const QuadratureSettings& settings) {
    std::vector<double> out(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        out[static_cast<std::size_t>(n - 1)] = coefficient(params, c, n, settings);
    }
    return out;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

ModalState::ModalState(int N_, std::vector<double> a_) : N(N_), a(std::move(a_)) {
    if (N < 1) throw ConfigError("truncation order must be >= 1");
    if (static_cast<int>(a.size()) != N) {
        throw ConfigError("modal state needs exactly N coefficients");
    }
    for (double v : a) {
        if (!std::isfinite(v)) throw ConfigError("modal coefficients must be finite");
    }
}

ModalState ModalState::unit_mode(int N, int n) {
    if (n < 1 || n > N) throw ConfigError("unit mode index must lie in [1, N]");
    std::vector<double> a(static_cast<std::size_t>(N), 0.0);
    a[static_cast<std::size_t>(n - 1)] = 1.0;
    return ModalState(N, std::move(a));
}

double ModalState::norm() const noexcept {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

std::vector<double> make_time_grid(double t_final, double dt) {
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw ConfigError("t_final must be positive and finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
    const long long steps = std::max(1LL, std::llround(t_final / dt));
    if (steps > 50'000'000LL) throw ConfigError("time grid too fine: over 5e7 steps");
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (long long i = 0; i <= steps; ++i) {
        grid[static_cast<std::size_t>(i)] =
            t_final * (static_cast<double>(i) / static_cast<double>(steps));
    }
    grid.back() = t_final;
    return grid;
}

ModalState project_initial(const Profile& z0, const SystemParams& params, int N,
                           const QuadratureSettings& settings) {
    if (N < 1) throw ConfigError("truncation order must be >= 1");
    std::vector<double> a(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        a[static_cast<std::size_t>(n - 1)] = coefficient(params, z0, n, settings);
    }
    return ModalState(N, std::move(a));
}

Trajectory simulate_open_loop(const ModalState& state, const SystemParams& params,
                              const Profile& c, const std::vector<double>& t_grid,
                              const QuadratureSettings& settings) {
    check_grid(t_grid);
    const std::vector<double> c_coeffs = output_coefficients(params, c, state.N, settings);

    Trajectory traj;
    traj.times = t_grid;
    traj.y.reserve(t_grid.size());
    traj.u.assign(t_grid.size(), 0.0);
    traj.state_norm.reserve(t_grid.size());

    std::vector<double> a(state.a.size());
    for (double t : t_grid) {
        for (int n = 1; n <= state.N; ++n) {
            const std::size_t i = static_cast<std::size_t>(n - 1);
            a[i] = std::exp(eigenvalue(params, n) * t) * state.a[i];
        }
        traj.y.push_back(dot(c_coeffs, a));
        double s = 0.0;
        for (double v : a) s += v * v;
        traj.state_norm.push_back(std::sqrt(s));
    }
    return traj;
}

double y2_series(const ModalState& state, const SystemParams& params,
                 const std::vector<int>& k_set, const Profile& c, double t,
                 const QuadratureSettings& settings) {
    double sum = 0.0;
    for (int n : k_set) {
        if (n < 1 || n > state.N) continue;
        const std::size_t i = static_cast<std::size_t>(n - 1);
        sum += std::exp(eigenvalue(params, n) * t) * state.a[i] *
               coefficient(params, c, n, settings);
    }
    return sum;
}

DetailedRun simulate_closed_loop_detailed(const ModalState& state, const SystemParams& params,
                                          const Profile& b, const Profile& c,
                                          const FeedbackLaw& law,
                                          const std::vector<double>& t_grid, int N,
                                          const QuadratureSettings& settings) {
    check_grid(t_grid);
    if (state.N > N) {
        throw ConfigError("truncation order must cover the initial state");
    }
    const std::vector<double> c_coeffs = output_coefficients(params, c, N, settings);
    const Eigen::MatrixXd m = closed_loop_matrix(params, b, law, N, settings);

    Eigen::VectorXd a = Eigen::VectorXd::Zero(N);
    for (int n = 0; n < state.N; ++n) a(n) = state.a[static_cast<std::size_t>(n)];

    // Uniform grids propagate with one precomputed step exponential; otherwise
    // each step gets its own.
    const double dt0 = t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0;
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
        if (std::abs((t_grid[i + 1] - t_grid[i]) - dt0) > 1e-12 * std::max(1.0, dt0)) {
            uniform = false;
            break;
        }
    }
    Eigen::MatrixXd step_exp;
    if (uniform && t_grid.size() > 1) step_exp = (m * dt0).exp();

    DetailedRun run;
    Trajectory& traj = run.trajectory;

    std::vector<double> a_std(static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0) {
            if (uniform) {
                a = step_exp * a;
            } else {
                a = ((m * (t_grid[i] - t_grid[i - 1])).exp() * a).eval();
            }
        }
        Eigen::VectorXd::Map(a_std.data(), N) = a;
        const double norm = a.norm();
        if (!(norm <= kDivergenceGuard)) {
            throw DivergenceError("state norm exceeded " + std::to_string(kDivergenceGuard) +
                                      " at t = " + std::to_string(t_grid[i]),
                                  std::move(traj));
        }
        traj.times.push_back(t_grid[i]);
        traj.y.push_back(dot(c_coeffs, a_std));
        traj.u.push_back(law.control(a_std));
        traj.state_norm.push_back(norm);
        run.states.push_back(a_std);
    }
    return run;
}

Trajectory simulate_closed_loop(const ModalState& state, const SystemParams& params,
                                const Profile& b, const Profile& c, const FeedbackLaw& law,
                                const std::vector<double>& t_grid, int N,
                                const QuadratureSettings& settings) {
    return simulate_closed_loop_detailed(state, params, b, c, law, t_grid, N, settings)
        .trajectory;
}

std::vector<double> reconstruct_field(const ModalState& state, const SystemParams& params,
                                      const std::vector<double>& xi_grid, double alpha_cap) {
    if (params.alpha > alpha_cap) {
        throw ConfigError("alpha exceeds the reconstruction cap " + std::to_string(alpha_cap));
    }
    std::vector<double> z;
    z.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        double v = 0.0;
        for (int n = 1; n <= state.N; ++n) {
            v += state.a[static_cast<std::size_t>(n - 1)] * eigenfunction_eval(params, n, xi);
        }
        z.push_back(v);
    }
    return z;
}

double estimate_decay_rate(const Trajectory& traj, double floor) {
    if (traj.times.size() != traj.y.size()) {
        throw EstimationError("trajectory arrays disagree in length");
    }
    // Maximal contiguous run of usable samples ending at the last one.
    std::size_t end = traj.y.size();
    while (end > 0 && !(std::abs(traj.y[end - 1]) > floor)) --end;
    std::size_t begin = end;
    while (begin > 0 && std::abs(traj.y[begin - 1]) > floor) --begin;
    const std::size_t count = end - begin;
    if (count < 10) {
        throw EstimationError("need at least 10 samples above the floor, have " +
                              std::to_string(count));
    }

    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double t = traj.times[i];
        const double l = std::log(std::abs(traj.y[i]));
        st += t;
        sl += l;
        stt += t * t;
        stl += t * l;
    }
    const double n = static_cast<double>(count);
    const double denom = n * stt - st * st;
    if (denom == 0.0) throw EstimationError("degenerate time window for the rate fit");
    return (n * stl - st * sl) / denom;
}

}  // namespace modalstab
