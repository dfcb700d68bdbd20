#include <doctest.h>

#include <cmath>

#include "modalstab/errors.hpp"
#include "modalstab/quadrature.hpp"
#include "modalstab/spectral.hpp"

using namespace modalstab;

TEST_CASE("eigenvalues follow k - alpha^2/4 - n^2 pi^2") {
    const SystemParams p(2.0, 5.0);
    CHECK(eigenvalue(p, 1) == doctest::Approx(4.0 - kPiSq).epsilon(1e-15));
    CHECK(eigenvalue(p, 3) == doctest::Approx(4.0 - 9.0 * kPiSq).epsilon(1e-15));

    const SystemParams q(0.0, kPiSq);
    CHECK(eigenvalue(q, 1) == 0.0);  // exact: k - pi^2 cancels bit for bit
}

TEST_CASE("eigenvalues are strictly decreasing") {
    const SystemParams p(1.0, 40.0);
    for (int n = 1; n < 200; ++n) CHECK(eigenvalue(p, n) > eigenvalue(p, n + 1));
}

TEST_CASE("n_max_unstable counts nonnegative eigenvalues") {
    CHECK(n_max_unstable(SystemParams(0.0, 0.0)) == 0);
    CHECK(n_max_unstable(SystemParams(0.0, -3.0)) == 0);
    CHECK(n_max_unstable(SystemParams(0.0, kPiSq)) == 1);          // lambda_1 = 0 counts
    CHECK(n_max_unstable(SystemParams(0.0, 4.0 * kPiSq)) == 2);    // boundary again
    CHECK(n_max_unstable(SystemParams(0.0, 5.0 * kPiSq)) == 2);
    CHECK(n_max_unstable(SystemParams(2.0, 1.0 + kPiSq)) == 1);    // alpha shift
    CHECK(n_max_unstable(SystemParams(0.0, 101.0 * kPiSq)) == 10);
}

TEST_CASE("eigenfunction values, ends, and domain checks") {
    const SystemParams p(2.0, 0.0);
    const double expected = std::sqrt(2.0) * std::exp(0.25);  // n=2, xi=1/4: sin(pi/2)=1
    CHECK(eigenfunction_eval(p, 2, 0.25) == doctest::Approx(expected).epsilon(1e-15));

    CHECK(eigenfunction_eval(p, 3, 0.0) == 0.0);
    CHECK(eigenfunction_eval(p, 3, 1.0) == 0.0);
    CHECK_THROWS_AS(eigenfunction_eval(p, 1, -0.1), DomainError);
    CHECK_THROWS_AS(eigenfunction_eval(p, 1, 1.1), DomainError);
    CHECK_THROWS_AS(eigenfunction_eval(p, 0, 0.5), ConfigError);
}

TEST_CASE("rational trig reduction matches the direct evaluation") {
    CHECK(sin_n_pi_rational(2, Rational(1, 4)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sin_n_pi_rational(4, Rational(1, 2)) == 0.0);  // integer multiple: exactly zero
    CHECK(sin_n_pi_rational(1000001, Rational(1, 2)) ==
          doctest::Approx(std::sin(kPi * 0.5)).epsilon(1e-15));
    CHECK(cos_n_pi_rational(2, Rational(1, 2)) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("eigenfunctions are orthonormal in the weighted inner product") {
    for (double alpha : {0.0, 0.5, 2.0}) {
        const SystemParams p(alpha, 0.0);
        for (int i = 1; i <= 6; ++i) {
            for (int j = i; j <= 6; ++j) {
                const double g = weighted_inner_product(
                    [&](double x) { return eigenfunction_eval(p, i, x); },
                    [&](double x) { return eigenfunction_eval(p, j, x); }, p,
                    QuadratureSettings{});
                CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-11).scale(1.0));
            }
        }
    }
}
