#pragma once

#include "modalstab/rational.hpp"

namespace modalstab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kPiSq = kPi * kPi;

/// Largest drift accepted by field reconstruction. exp(alpha*xi/2) grows as
/// e^{alpha/2}; beyond this cap reconstruction refuses to run.
inline constexpr double kDefaultAlphaCap = 50.0;

/// Physical parameters of the transport operator on (0, 1) with homogeneous
/// boundary values: drift alpha (1/length) and reaction rate k (1/time).
struct SystemParams {
    double alpha = 0.0;
    double k = 0.0;

    SystemParams() = default;
    SystemParams(double alpha_, double k_);
};

/// sin(n*pi*xi) with the argument reduced modulo 2 on n*xi before the
/// multiplication by pi, so large n does not lose precision.
double sin_n_pi(double n_times_xi);

/// sin(n*pi*(num/den)) reduced exactly in integer arithmetic.
double sin_n_pi_rational(std::int64_t n, const Rational& xi);

/// cos(n*pi*(num/den)) reduced exactly in integer arithmetic.
double cos_n_pi_rational(std::int64_t n, const Rational& xi);

/// n-th eigenvalue: k - alpha^2/4 - n^2 pi^2. Strictly decreasing in n.
double eigenvalue(const SystemParams& params, int n);

/// Weighted eigenfunction sqrt(2) exp(alpha xi / 2) sin(n pi xi).
/// xi must lie in [0, 1].
double eigenfunction_eval(const SystemParams& params, int n, double xi);

/// Largest n with eigenvalue(params, n) >= 0, or 0 when every mode decays.
/// A zero eigenvalue counts as unstable: its modal component never decays.
int n_max_unstable(const SystemParams& params);

}  // namespace modalstab
