#include "modalstab/coefficients.hpp"

#include <cmath>
#include <vector>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

/// Antiderivative term of the direct integral for alpha >= 0:
/// F(xi) = exp(-alpha xi/2) (-(alpha/2) sin(n pi xi) - n pi cos(n pi xi))
///         / (alpha^2/4 + n^2 pi^2),
/// evaluated at a rational point with exact trig-argument reduction.
double antiderivative_at(double alpha, int n, const Rational& xi) {
    const double npi = static_cast<double>(n) * kPi;
    const double s = sin_n_pi_rational(n, xi);
    const double c = cos_n_pi_rational(n, xi);
    const double denom = 0.25 * alpha * alpha + npi * npi;
    return std::exp(-0.5 * alpha * xi.value()) * (-0.5 * alpha * s - npi * c) / denom;
}

}  // namespace

const char* to_string(ZeroKind kind) noexcept {
    switch (kind) {
        case ZeroKind::exact_zero: return "exact_zero";
        case ZeroKind::exact_nonzero: return "exact_nonzero";
        case ZeroKind::numeric_zero: return "numeric_zero";
        case ZeroKind::numeric_nonzero: return "numeric_nonzero";
    }
    return "?";
}

double coeff_indicator(const SystemParams& params, const Rational& p, const Rational& q, int n) {
    if (n < 1) throw ConfigError("mode index must be >= 1");
    const Rational zero(0, 1);
    const Rational one(1, 1);
    if (!(zero <= p && p < q && q <= one)) {
        throw ConfigError("indicator interval needs 0 <= p < q <= 1");
    }
    if (params.alpha == 0.0) {
        const Rational half_sum = (p + q) / Rational(2, 1);
        const Rational half_diff = (q - p) / Rational(2, 1);
        const double npi = static_cast<double>(n) * kPi;
        return (2.0 * kSqrt2 / npi) * sin_n_pi_rational(n, half_sum) *
               sin_n_pi_rational(n, half_diff);
    }
    return kSqrt2 * (antiderivative_at(params.alpha, n, q) - antiderivative_at(params.alpha, n, p));
}

double coeff_quadrature(const SystemParams& params, const Profile& profile, int n,
                        const QuadratureSettings& settings) {
    if (n < 1) throw ConfigError("mode index must be >= 1");
    QuadratureSettings with_breaks = settings;
    for (double bp : profile.breakpoints()) with_breaks.breakpoints.push_back(bp);
    const SystemParams p = params;
    return weighted_inner_product([&profile](double x) { return profile(x); },
                                  [&p, n](double x) { return eigenfunction_eval(p, n, x); },
                                  params, with_breaks);
}

double coefficient(const SystemParams& params, const Profile& profile, int n,
                   const QuadratureSettings& settings) {
    if (profile.is_indicator()) {
        return coeff_indicator(params, profile.lower(), profile.upper(), n);
    }
    return coeff_quadrature(params, profile, n, settings);
}

bool indicator_zero_exact(const Rational& p, const Rational& q, std::int64_t n) {
    const Rational half_sum = (p + q) / Rational(2, 1);
    const Rational half_diff = (q - p) / Rational(2, 1);
    return (n % half_sum.den()) == 0 || (n % half_diff.den()) == 0;
}

ZeroCertainty classify_magnitude(double value, double threshold) noexcept {
    ZeroCertainty zc;
    zc.magnitude = std::abs(value);
    zc.threshold = threshold;
    zc.kind = (zc.magnitude <= threshold) ? ZeroKind::numeric_zero : ZeroKind::numeric_nonzero;
    return zc;
}

ZeroCertainty classify_zero(const SystemParams& params, const Profile& profile, int n,
                            const ThresholdPolicy& policy, const QuadratureSettings& settings) {
    if (n < 1) throw ConfigError("mode index must be >= 1");
    if (params.alpha == 0.0 && profile.is_indicator()) {
        ZeroCertainty zc;
        zc.kind = indicator_zero_exact(profile.lower(), profile.upper(), n)
                      ? ZeroKind::exact_zero
                      : ZeroKind::exact_nonzero;
        zc.magnitude = std::abs(coeff_indicator(params, profile.lower(), profile.upper(), n));
        zc.threshold = 0.0;
        return zc;
    }
    const int window = std::max(policy.window, n);
    double max_mag = 0.0;
    std::vector<double> coeffs(static_cast<std::size_t>(window));
    for (int m = 1; m <= window; ++m) {
        coeffs[static_cast<std::size_t>(m - 1)] = coefficient(params, profile, m, settings);
        max_mag = std::max(max_mag, std::abs(coeffs[static_cast<std::size_t>(m - 1)]));
    }
    return classify_magnitude(coeffs[static_cast<std::size_t>(n - 1)], policy.tau_rel * max_mag);
}

std::int64_t zero_pattern_period(const Rational& p, const Rational& q) {
    const Rational half_sum = (p + q) / Rational(2, 1);
    const Rational half_diff = (q - p) / Rational(2, 1);
    const std::int64_t a = half_sum.den();
    const std::int64_t b = half_diff.den();
    const std::int64_t l = lcm_checked(a, b);

    auto zero_at = [&](std::int64_t n) { return (n % a) == 0 || (n % b) == 0; };
    auto is_period = [&](std::int64_t cand) {
        for (std::int64_t n = 1; n <= l; ++n) {
            if (zero_at(n) != zero_at(n + cand)) return false;
        }
        return true;
    };

    // The lcm is a period; the least one is a divisor of it (e.g. denominators
    // 2 and 4 give the all-even pattern, period 2, not 4).
    for (std::int64_t cand = 1; cand <= l; ++cand) {
        if (l % cand == 0 && is_period(cand)) return cand;
    }
    return l;
}

std::int64_t zero_pattern_period(const SystemParams& params, const Rational& p,
                                 const Rational& q) {
    if (params.alpha != 0.0) {
        throw ConfigError("zero pattern is periodic only for alpha = 0");
    }
    return zero_pattern_period(p, q);
}

}  // namespace modalstab
