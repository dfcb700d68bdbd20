#pragma once

#include <cstdint>

#include "modalstab/profile.hpp"
#include "modalstab/quadrature.hpp"
#include "modalstab/spectral.hpp"

namespace modalstab {

/// How a coefficient was decided to be zero or not. Exact kinds come from
/// integer arithmetic on rational data; numeric kinds compare the magnitude
/// against a relative threshold.
enum class ZeroKind { exact_zero, exact_nonzero, numeric_zero, numeric_nonzero };

struct ZeroCertainty {
    ZeroKind kind = ZeroKind::numeric_nonzero;
    double magnitude = 0.0;  // |coefficient|
    double threshold = 0.0;  // comparison threshold (0 for exact kinds)

    bool exact() const noexcept {
        return kind == ZeroKind::exact_zero || kind == ZeroKind::exact_nonzero;
    }
    bool zero() const noexcept {
        return kind == ZeroKind::exact_zero || kind == ZeroKind::numeric_zero;
    }
    /// Numeric magnitude within [threshold, 10*threshold]: close enough to the
    /// cut that the classification could flip the verdicts.
    bool borderline() const noexcept {
        return !exact() && threshold > 0.0 && magnitude >= threshold &&
               magnitude <= 10.0 * threshold;
    }
};

const char* to_string(ZeroKind kind) noexcept;

/// Relative-threshold policy for numeric zero classification. The threshold is
/// tau_rel times the largest coefficient magnitude over modes 1..window.
struct ThresholdPolicy {
    double tau_rel = 1e-9;
    int window = 64;
};

/// Fourier coefficient <chi_[p,q], phi_n>_H in closed form:
/// sqrt(2) * integral_p^q exp(-alpha xi / 2) sin(n pi xi) d xi.
/// For alpha = 0 this is (2 sqrt(2) / (n pi)) sin(n pi (p+q)/2) sin(n pi (q-p)/2).
double coeff_indicator(const SystemParams& params, const Rational& p, const Rational& q, int n);

/// Same coefficient through the weighted inner product by adaptive quadrature,
/// with breakpoints at the profile's discontinuities. Independent of the
/// closed-form route, so either checks the other.
double coeff_quadrature(const SystemParams& params, const Profile& profile, int n,
                        const QuadratureSettings& settings = {});

/// Coefficient by the cheapest exact route: closed form for indicators,
/// quadrature otherwise.
double coefficient(const SystemParams& params, const Profile& profile, int n,
                   const QuadratureSettings& settings = {});

/// True iff the alpha = 0 indicator coefficient vanishes exactly:
/// n(p+q)/2 or n(q-p)/2 is an integer. Pure integer arithmetic.
bool indicator_zero_exact(const Rational& p, const Rational& q, std::int64_t n);

/// Zero classification for one mode. Exact for alpha = 0 indicators; numeric
/// (relative threshold over the policy window) otherwise.
ZeroCertainty classify_zero(const SystemParams& params, const Profile& profile, int n,
                            const ThresholdPolicy& policy = {},
                            const QuadratureSettings& settings = {});

/// Numeric classification of a known coefficient value against a threshold.
ZeroCertainty classify_magnitude(double value, double threshold) noexcept;

/// Least P with zero(n) == zero(n + P) for every n, for the alpha = 0 zero
/// pattern of an indicator. Computed from the reduced denominators of (p+q)/2
/// and (q-p)/2; their lcm is always a period but not always the least one, so
/// the smallest working divisor is returned.
std::int64_t zero_pattern_period(const Rational& p, const Rational& q);

/// Spec'd entry point: rejects alpha != 0, where the pattern is not periodic.
std::int64_t zero_pattern_period(const SystemParams& params, const Rational& p, const Rational& q);

}  // namespace modalstab
