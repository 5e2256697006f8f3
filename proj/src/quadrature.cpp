#include "qpsc/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qpsc::quadrature {

Rule gauss_legendre(int n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");

    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (b + a);
    const double half = 0.5 * (b - a);

    // P_n(x) and P_n'(x) from the three-term recurrence
    auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };

    // roots are symmetric about 0; solve for the upper half only
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

Rule composite_gauss_legendre(int nodes, double a, double b)
{
    if (nodes < 1) throw std::invalid_argument("composite_gauss_legendre: nodes must be positive");
    if (nodes < panel_order) return gauss_legendre(nodes, a, b);

    const int panels = (nodes + panel_order - 1) / panel_order;
    const Rule unit = gauss_legendre(panel_order, 0.0, 1.0);
    const double width = (b - a) / panels;

    Rule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels) * panel_order);
    rule.weights.reserve(rule.nodes.capacity());
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * width;
        for (int k = 0; k < panel_order; ++k) {
            rule.nodes.push_back(left + width * unit.nodes[k]);
            rule.weights.push_back(width * unit.weights[k]);
        }
    }
    return rule;
}

Rule periodic_trapezoid(int n)
{
    if (n < 1) throw std::invalid_argument("periodic_trapezoid: n must be positive");
    const double h = 2.0 * std::numbers::pi / n;
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.assign(n, h);
    for (int i = 0; i < n; ++i) rule.nodes[i] = i * h;
    return rule;
}

}  // namespace qpsc::quadrature
