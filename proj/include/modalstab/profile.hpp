#pragma once

#include <string>
#include <vector>

#include "modalstab/rational.hpp"

namespace modalstab {

/// Spatial shape used for the input b, the output weight c, and initial
/// states: either an indicator of a rational-endpoint interval or a tabulated
/// piecewise-linear function on [0, 1].
class Profile {
public:
    enum class Kind { indicator, tabulated };

    /// Indicator of [p, q] with 0 <= p < q <= 1. Degenerate p == q is rejected.
    static Profile indicator(const Rational& p, const Rational& q);

    /// Piecewise-linear interpolant through (nodes, values). Nodes must be
    /// strictly increasing, start at 0, and end at 1.
    static Profile tabulated(std::vector<double> nodes, std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    bool is_indicator() const noexcept { return kind_ == Kind::indicator; }

    const Rational& lower() const;
    const Rational& upper() const;
    const std::vector<double>& nodes() const;
    const std::vector<double>& values() const;

    double operator()(double xi) const;

    /// Interior discontinuities / kinks: indicator endpoints or tabulated nodes.
    std::vector<double> breakpoints() const;

    /// Config-grammar form, e.g. "indicator 1/4 3/4".
    std::string describe() const;

private:
    Profile() = default;

    Kind kind_ = Kind::indicator;
    Rational p_;
    Rational q_;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

}  // namespace modalstab
