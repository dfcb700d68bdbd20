#include <doctest.h>

#include <cmath>
#include <random>

#include "modalstab/coefficients.hpp"
#include "modalstab/errors.hpp"

using namespace modalstab;

namespace {

const SystemParams kPure(0.0, 0.0);  // alpha = 0

Profile quarter_band() { return Profile::indicator(Rational(1, 4), Rational(3, 4)); }
Profile sensor_band() { return Profile::indicator(Rational(1, 4), Rational(1, 2)); }

}  // namespace

TEST_CASE("closed-form indicator coefficients at alpha = 0") {
    // <chi_[1/4,3/4], phi_1> = 2/pi, and mode 2 vanishes by symmetry.
    CHECK(coeff_indicator(kPure, Rational(1, 4), Rational(3, 4), 1) ==
          doctest::Approx(0.6366197723675814).epsilon(1e-15));
    CHECK(coeff_indicator(kPure, Rational(1, 4), Rational(3, 4), 2) == 0.0);

    // <chi_[1/4,1/2], phi_1> = 1/pi, <chi_[1/4,1/2], phi_2> = sqrt(2)/(2 pi).
    CHECK(coeff_indicator(kPure, Rational(1, 4), Rational(1, 2), 1) ==
          doctest::Approx(0.3183098861837907).epsilon(1e-15));
    CHECK(coeff_indicator(kPure, Rational(1, 4), Rational(1, 2), 2) ==
          doctest::Approx(0.22507907903927652).epsilon(1e-15));
}

TEST_CASE("closed-form indicator coefficient at alpha = 1") {
    const SystemParams p(1.0, 0.0);
    CHECK(coeff_indicator(p, Rational(1, 4), Rational(1, 2), 1) ==
          doctest::Approx(0.26315247284547594).epsilon(1e-14));
}

TEST_CASE("closed form and quadrature agree across drift values") {
    for (const double alpha : {0.0, 0.5, 2.0}) {
        const SystemParams p(alpha, 0.0);
        const Profile band = quarter_band();
        for (int n = 1; n <= 20; ++n) {
            const double exact = coeff_indicator(p, band.lower(), band.upper(), n);
            const double quad = coeff_quadrature(p, band, n);
            CHECK(std::abs(exact - quad) < 1e-12);
        }
    }
}

TEST_CASE("tabulated profiles route through quadrature") {
    // Triangle peaked at 1/2: <T, phi_n> = 4 sqrt(2) sin(n pi / 2) / (n pi)^2.
    const Profile hat = Profile::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
    CHECK(coefficient(kPure, hat, 1) == doctest::Approx(4.0 * std::sqrt(2.0) / kPiSq).epsilon(1e-13));
    CHECK(coefficient(kPure, hat, 2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    CHECK(coefficient(kPure, hat, 3) ==
          doctest::Approx(-4.0 * std::sqrt(2.0) / (9.0 * kPiSq)).epsilon(1e-13));
}

TEST_CASE("exact zero test by integer arithmetic") {
    // [1/4,3/4]: (p+q)/2 = 1/2, (q-p)/2 = 1/4; zero iff n is even.
    for (int n = 1; n <= 16; ++n) {
        CHECK(indicator_zero_exact(Rational(1, 4), Rational(3, 4), n) == (n % 2 == 0));
    }
    // [1/4,1/2]: both midpoints have denominator 8; zero iff 8 | n.
    for (int n = 1; n <= 24; ++n) {
        CHECK(indicator_zero_exact(Rational(1, 4), Rational(1, 2), n) == (n % 8 == 0));
    }
    // Full-domain input never misses an odd mode, loses every even one.
    for (int n = 1; n <= 8; ++n) {
        CHECK(indicator_zero_exact(Rational(0, 1), Rational(1, 1), n) == (n % 2 == 0));
    }
}

TEST_CASE("exact zero test matches the closed form magnitudes") {
    std::mt19937 rng(20260822u);
    std::uniform_int_distribution<std::int64_t> den_pick(2, 12);
    for (int trial = 0; trial < 10; ++trial) {
        const std::int64_t dp = den_pick(rng);
        const std::int64_t dq = den_pick(rng);
        std::uniform_int_distribution<std::int64_t> np_pick(0, dp - 1);
        std::uniform_int_distribution<std::int64_t> nq_pick(1, dq);
        Rational p(np_pick(rng), dp);
        Rational q(nq_pick(rng), dq);
        if (!(p < q)) continue;
        for (int n = 1; n <= 40; ++n) {
            const double mag = std::abs(coeff_indicator(kPure, p, q, n));
            if (indicator_zero_exact(p, q, n)) {
                CHECK(mag < 1e-12);
            } else {
                CHECK(mag > 1e-6);
            }
        }
    }
}

TEST_CASE("zero pattern periods") {
    CHECK(zero_pattern_period(Rational(1, 4), Rational(3, 4)) == 2);
    CHECK(zero_pattern_period(Rational(1, 4), Rational(1, 2)) == 8);
    CHECK(zero_pattern_period(Rational(0, 1), Rational(1, 1)) == 2);
    // Irregular endpoints: (p+q)/2 = 2/5, (q-p)/2 = 1/5; zero iff 5 | n.
    CHECK(zero_pattern_period(Rational(1, 5), Rational(3, 5)) == 5);

    // The parameterized overload only admits zero drift.
    CHECK(zero_pattern_period(kPure, Rational(1, 4), Rational(1, 2)) == 8);
    CHECK_THROWS_AS(zero_pattern_period(SystemParams(1.0, 0.0), Rational(1, 4), Rational(1, 2)),
                    ConfigError);
}

TEST_CASE("period is minimal, not just the lcm of the denominators") {
    // Denominators 2 and 4 give lcm 4, but evenness already repeats with 2.
    const std::int64_t period = zero_pattern_period(Rational(1, 4), Rational(3, 4));
    CHECK(period == 2);
    for (int n = 1; n <= 32; ++n) {
        CHECK(indicator_zero_exact(Rational(1, 4), Rational(3, 4), n) ==
              indicator_zero_exact(Rational(1, 4), Rational(3, 4), n + period));
    }
}

TEST_CASE("classification is exact for zero-drift indicators") {
    const ZeroCertainty z2 = classify_zero(kPure, quarter_band(), 2);
    CHECK(z2.kind == ZeroKind::exact_zero);
    CHECK(z2.zero());
    CHECK(z2.exact());
    CHECK(!z2.borderline());
    CHECK(z2.threshold == 0.0);

    const ZeroCertainty z1 = classify_zero(kPure, quarter_band(), 1);
    CHECK(z1.kind == ZeroKind::exact_nonzero);
    CHECK(!z1.zero());
    CHECK(z1.magnitude == doctest::Approx(0.6366197723675814).epsilon(1e-14));
}

TEST_CASE("classification is numeric for drifted or tabulated profiles") {
    const SystemParams drift(2.0, 0.0);
    const ZeroCertainty z = classify_zero(drift, sensor_band(), 1);
    CHECK(!z.exact());
    CHECK(z.kind == ZeroKind::numeric_nonzero);
    CHECK(z.threshold > 0.0);

    // The hat profile's even modes vanish analytically; numerically they land
    // far below any reasonable threshold.
    const Profile hat = Profile::tabulated({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
    const ZeroCertainty ze = classify_zero(kPure, hat, 2);
    CHECK(ze.kind == ZeroKind::numeric_zero);
    CHECK(!ze.borderline());
}

TEST_CASE("borderline band spans one decade above the threshold") {
    CHECK(classify_magnitude(0.5e-9, 1e-9).kind == ZeroKind::numeric_zero);
    CHECK(!classify_magnitude(0.5e-9, 1e-9).borderline());

    const ZeroCertainty on_cut = classify_magnitude(3e-9, 1e-9);
    CHECK(on_cut.kind == ZeroKind::numeric_nonzero);
    CHECK(on_cut.borderline());

    const ZeroCertainty at_edge = classify_magnitude(1e-8, 1e-9);
    CHECK(at_edge.borderline());

    CHECK(!classify_magnitude(1.1e-8, 1e-9).borderline());
    CHECK(!classify_magnitude(1.0, 1e-9).borderline());
}
