#include "modalstab/spectral.hpp"

#include <cmath>
#include <string>

#include "modalstab/errors.hpp"

namespace modalstab {

SystemParams::SystemParams(double alpha_, double k_) : alpha(alpha_), k(k_) {
    if (!std::isfinite(alpha) || !std::isfinite(k)) {
        throw ConfigError("system parameters must be finite");
    }
    if (alpha < 0.0) {
        throw ConfigError("drift alpha must be >= 0, got " + std::to_string(alpha));
    }
}

double sin_n_pi(double n_times_xi) {
    return std::sin(kPi * std::fmod(n_times_xi, 2.0));
}

double sin_n_pi_rational(std::int64_t n, const Rational& xi) {
    std::int64_t two_den = 2 * xi.den();
    std::int64_t r = (static_cast<__int128>(n) * xi.num()) % two_den;
    if (r < 0) r += two_den;
    if (r % xi.den() == 0) return 0.0;  // integer multiple of pi, exactly
    return std::sin(kPi * (static_cast<double>(r) / static_cast<double>(xi.den())));
}

double cos_n_pi_rational(std::int64_t n, const Rational& xi) {
    std::int64_t two_den = 2 * xi.den();
    std::int64_t r = (static_cast<__int128>(n) * xi.num()) % two_den;
    if (r < 0) r += two_den;
    if (r % xi.den() == 0) return (r == 0) ? 1.0 : -1.0;
    if ((2 * r) % xi.den() == 0 && ((2 * r) / xi.den()) % 2 == 1) return 0.0;  // odd half
    return std::cos(kPi * (static_cast<double>(r) / static_cast<double>(xi.den())));
}

double eigenvalue(const SystemParams& params, int n) {
    if (n < 1) throw ConfigError("mode index must be >= 1");
    double nn = static_cast<double>(n) * static_cast<double>(n);
    return params.k - 0.25 * params.alpha * params.alpha - nn * kPiSq;
}

double eigenfunction_eval(const SystemParams& params, int n, double xi) {
    if (n < 1) throw ConfigError("mode index must be >= 1");
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw DomainError("xi = " + std::to_string(xi) + " outside [0, 1]");
    }
    if (xi == 0.0 || xi == 1.0) return 0.0;  // Dirichlet ends, exactly
    const double kSqrt2 = 1.41421356237309504880;
    return kSqrt2 * std::exp(0.5 * params.alpha * xi) * sin_n_pi(static_cast<double>(n) * xi);
}

int n_max_unstable(const SystemParams& params) {
    double margin = params.k - 0.25 * params.alpha * params.alpha;
    if (margin < 0.0) return 0;
    int n = static_cast<int>(std::floor(std::sqrt(margin) / kPi));
    // sqrt/floor can be off by an ulp at exact boundaries; settle by the sign
    // of the eigenvalue itself.
    while (eigenvalue(params, n + 1) >= 0.0) ++n;
    while (n >= 1 && eigenvalue(params, n) < 0.0) --n;
    return n;
}

}  // namespace modalstab
