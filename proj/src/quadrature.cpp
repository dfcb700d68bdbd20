#include "modalstab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

// 7-15 Gauss-Kronrod pair on [-1, 1]. Gauss nodes sit at xgk[1], xgk[3],
// xgk[5] and the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double centre = 0.5 * (a + b);

    const double fc = f(centre);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(centre - dx) + f(centre + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * half;
    p.error = std::abs((resk - resg) * half);
    return p;
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw ConfigError("quadrature tolerances must be > 0");
    }
    for (double bp : breakpoints) {
        if (!(bp >= 0.0 && bp <= 1.0)) {
            throw ConfigError("quadrature breakpoints must lie in [0, 1]");
        }
    }
}

double integrate(const Integrand& f, double a, double b, const QuadratureSettings& settings) {
    settings.validate();
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, settings);

    std::vector<double> edges;
    edges.push_back(a);
    for (double bp : settings.breakpoints) {
        if (bp > a && bp < b) edges.push_back(bp);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> panels;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }

    const std::size_t max_panels = std::max<std::size_t>(4096, 2 * panels.size());
    const double min_width = 1e-15 * (b - a);

    while (total_err > std::max(settings.abs_tol, settings.rel_tol * std::abs(total))) {
        if (panels.size() >= max_panels) {
            throw QuadratureError("adaptive quadrature exhausted its panel budget", total, total_err);
        }
        Panel worst = panels.top();
        if (worst.b - worst.a < min_width) {
            throw QuadratureError("adaptive quadrature stalled on a vanishing panel", total, total_err);
        }
        panels.pop();

        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    return total;
}

double weighted_inner_product(const Integrand& f, const Integrand& g,
                              const SystemParams& params, const QuadratureSettings& settings) {
    const double alpha = params.alpha;
    return integrate([&](double x) { return std::exp(-alpha * x) * f(x) * g(x); }, 0.0, 1.0,
                     settings);
}

}  // namespace modalstab
