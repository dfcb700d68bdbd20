#include "modalstab/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

/// Similarity scaling by powers of two (Osborne sweep): evens out row and
/// column norms without rounding, which the eigensolver needs on matrices
/// whose diagonal spans many orders of magnitude.
void balance_in_place(Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            double row = 0.0;
            double col = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                row += std::abs(m(i, j));
                col += std::abs(m(j, i));
            }
            if (row == 0.0 || col == 0.0) continue;
            double f = 1.0;
            while (col * 2.0 < row) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col >= row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0) {
                changed = true;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
        if (!changed) break;
    }
}

}  // namespace

std::optional<double> FeedbackLaw::gain_for(int n) const noexcept {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] == n) return gains[i];
    }
    return std::nullopt;
}

double FeedbackLaw::control(const std::vector<double>& a) const {
    double u = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const std::size_t idx = static_cast<std::size_t>(support[i]) - 1;
        if (idx < a.size()) u += gains[i] * a[idx];
    }
    return u;
}

double TargetPolicy::target_for(double lambda) const noexcept {
    return -std::max(1.0, std::abs(lambda) + 1.0);
}

FeedbackLaw synthesize(const SystemParams& params, const std::vector<ModeRecord>& records,
                       const TargetPolicy& policy, bool best_effort) {
    const int n_unstable = n_max_unstable(params);
    if (static_cast<int>(records.size()) < n_unstable) {
        throw ConfigError("records cover " + std::to_string(records.size()) +
                          " modes but " + std::to_string(n_unstable) + " are unstable");
    }

    FeedbackLaw law;
    std::vector<double> lambdas;
    for (const ModeRecord& r : records) {
        if (r.lambda < 0.0) break;
        if (r.b_zero.zero()) {
            if (!best_effort) {
                throw NotStateStabilizableError(
                    "unstable mode " + std::to_string(r.n) +
                        " has a vanishing input coefficient; no feedback reaches it",
                    r.n);
            }
            continue;  // best effort: leave the unreachable mode alone
        }
        law.support.push_back(r.n);
        lambdas.push_back(r.lambda);
    }
    if (law.support.empty()) return law;

    if (!policy.explicit_targets.empty()) {
        if (policy.explicit_targets.size() != law.support.size()) {
            throw ConfigError("expected " + std::to_string(law.support.size()) +
                              " feedback targets, got " +
                              std::to_string(policy.explicit_targets.size()));
        }
        for (double mu : policy.explicit_targets) {
            if (!(mu < 0.0)) throw ConfigError("feedback targets must be strictly negative");
        }
        law.targets = policy.explicit_targets;
    } else {
        for (double lambda : lambdas) law.targets.push_back(policy.target_for(lambda));
    }

    // Rank-one placement on the S-block: the closed-loop characteristic
    // polynomial factors through these partial-fraction gains.
    for (std::size_t i = 0; i < law.support.size(); ++i) {
        const double lambda_i = lambdas[i];
        const double b_i = records[static_cast<std::size_t>(law.support[i]) - 1].b;
        double numerator = 1.0;
        for (double mu : law.targets) numerator *= lambda_i - mu;
        double denominator = b_i;
        for (std::size_t j = 0; j < law.support.size(); ++j) {
            if (j != i) denominator *= lambda_i - lambdas[j];
        }
        law.gains.push_back(-numerator / denominator);
    }
    return law;
}

Eigen::MatrixXd closed_loop_matrix(const SystemParams& params, const Profile& b,
                                   const FeedbackLaw& law, int N,
                                   const QuadratureSettings& settings) {
    if (N < 1) throw ConfigError("truncation order must be >= 1");
    for (int n : law.support) {
        if (n > N) {
            throw ConfigError("truncation order " + std::to_string(N) +
                              " excludes supported mode " + std::to_string(n));
        }
    }
    Eigen::VectorXd b_vec(N);
    for (int n = 1; n <= N; ++n) b_vec(n - 1) = coefficient(params, b, n, settings);
    Eigen::VectorXd f_vec = Eigen::VectorXd::Zero(N);
    for (std::size_t i = 0; i < law.support.size(); ++i) {
        f_vec(law.support[i] - 1) = law.gains[i];
    }
    Eigen::MatrixXd m = (b_vec * f_vec.transpose()).eval();
    for (int n = 1; n <= N; ++n) m(n - 1, n - 1) += eigenvalue(params, n);
    return m;
}

SpectrumReport closed_loop_spectrum(const SystemParams& params, const Profile& b,
                                    const FeedbackLaw& law, int N,
                                    const QuadratureSettings& settings) {
    if (N < n_max_unstable(params)) {
        throw ConfigError("truncation order must cover every unstable mode");
    }
    Eigen::MatrixXd m = closed_loop_matrix(params, b, law, N, settings);
    balance_in_place(m);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("dense eigensolve of the closed-loop matrix failed");
    }
    const Eigen::VectorXcd ev = solver.eigenvalues();

    SpectrumReport report;
    for (int n = 1; n <= N; ++n) {
        if (std::find(law.support.begin(), law.support.end(), n) == law.support.end()) {
            report.untouched.push_back(eigenvalue(params, n));
        }
    }

    // Predicted spectrum: targets plus the untouched open-loop eigenvalues.
    // Both it and the computed spectrum are real in theory, so sorting the
    // real parts aligns the multisets.
    std::vector<double> expected = law.targets;
    expected.insert(expected.end(), report.untouched.begin(), report.untouched.end());
    std::sort(expected.begin(), expected.end());

    std::vector<std::complex<double>> computed(ev.data(), ev.data() + ev.size());
    std::sort(computed.begin(), computed.end(),
              [](const std::complex<double>& x, const std::complex<double>& y) {
                  return x.real() < y.real();
              });

    report.max_real_part = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < computed.size(); ++i) {
        report.max_real_part = std::max(report.max_real_part, computed[i].real());
        report.max_imag_part = std::max(report.max_imag_part, std::abs(computed[i].imag()));
        report.max_placement_error =
            std::max(report.max_placement_error, std::abs(computed[i] - expected[i]));
    }

    // Achieved values for the targets: nearest computed eigenvalue per target.
    for (double mu : law.targets) {
        double best = computed.empty() ? mu : computed.front().real();
        double best_dist = std::abs(best - mu);
        for (const std::complex<double>& z : computed) {
            const double dist = std::abs(z - std::complex<double>(mu, 0.0));
            if (dist < best_dist) {
                best_dist = dist;
                best = z.real();
            }
        }
        report.placed.push_back(best);
    }
    return report;
}

}  // namespace modalstab
