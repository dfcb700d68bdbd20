#pragma once

#include <functional>
#include <vector>

#include "modalstab/spectral.hpp"

namespace modalstab {

/// Controls the adaptive Gauss-Kronrod integrator. Breakpoints are mandatory
/// panel boundaries; integrands with jumps stay piecewise smooth that way.
struct QuadratureSettings {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    std::vector<double> breakpoints;  // sorted, within [0, 1]

    void validate() const;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b] by globally adaptive 7-15 Gauss-Kronrod
/// refinement, splitting first at every breakpoint inside (a, b).
/// Oriented: a > b yields the negated integral, a == b yields 0.
/// Throws QuadratureError (carrying the best estimate and its bound) when
/// refinement stalls before the tolerance is met.
double integrate(const Integrand& f, double a, double b, const QuadratureSettings& settings);

/// Weighted inner product of Eq-type profiles on [0, 1]:
/// integral of exp(-alpha xi) f(xi) g(xi) d xi. Symmetric in (f, g).
double weighted_inner_product(const Integrand& f, const Integrand& g,
                              const SystemParams& params, const QuadratureSettings& settings);

}  // namespace modalstab
