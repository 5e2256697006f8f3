#pragma once

#include <vector>

namespace qpsc::quadrature {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const
    {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Order of each panel used by the composite Gauss-Legendre rule.
inline constexpr int panel_order = 16;

/// n-point Gauss-Legendre rule on [a, b]. Nodes are found by Newton iteration
/// on the three-term recurrence; accurate to rounding for n up to a few hundred.
Rule gauss_legendre(int n, double a, double b);

/// Approximately `nodes` points: ceil(nodes / panel_order) equal panels, each
/// with a panel_order-point Gauss-Legendre rule. Falls back to a single rule
/// when nodes < panel_order.
Rule composite_gauss_legendre(int nodes, double a, double b);

/// Left-endpoint trapezoid on the periodic interval [0, 2*pi): equal weights
/// 2*pi/n. Spectrally accurate for smooth 2*pi-periodic integrands.
Rule periodic_trapezoid(int n);

}  // namespace qpsc::quadrature
