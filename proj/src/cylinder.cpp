#include "qpsc/cylinder.hpp"

#include "qpsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpsc {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void check_z(const CylinderGeometry& geom, double z)
{
    if (!(z >= 0.0 && z <= geom.length()))
        throw DomainError("z = " + std::to_string(z) + " outside [0, " + std::to_string(geom.length()) + "]");
}

}  // namespace

QuantumNumbers::QuantumNumbers(int n_z, int n_theta) : n_z_(n_z), n_theta_(n_theta)
{
    if (n_z < 1 || n_theta < 1)
        throw std::invalid_argument("quantum numbers must be >= 1, got (" + std::to_string(n_z) + ", " +
                                    std::to_string(n_theta) + ")");
}

CylinderGeometry::CylinderGeometry(double radius, double length, double mass, double hbar)
    : radius_(radius), inverse_radius_(0.0), length_(length), mass_(mass), hbar_(hbar)
{
    if (!positive_finite(radius) || !positive_finite(length) || !positive_finite(mass) || !positive_finite(hbar))
        throw std::invalid_argument("geometry constants must be positive and finite");
    inverse_radius_ = radius == length / pi ? pi / length : 1.0 / radius;
}

CylinderGeometry CylinderGeometry::degenerate(double length, double mass, double hbar)
{
    return CylinderGeometry(length / pi, length, mass, hbar);
}

double energy(const QuantumNumbers& qn, const CylinderGeometry& geom)
{
    const double hbar2_2m = geom.hbar() * geom.hbar() / (2.0 * geom.mass());
    const double kz = pi / geom.length();
    const double ktheta = geom.inverse_radius();
    const double nz2 = static_cast<double>(qn.n_z()) * qn.n_z();
    const double nt2 = static_cast<double>(qn.n_theta()) * qn.n_theta();
    // equal wavenumber scales: sum the integers first so coincident levels stay exactly equal
    if (kz == ktheta) return hbar2_2m * (kz * kz) * (nz2 + nt2);
    return hbar2_2m * (nz2 * kz * kz + nt2 * ktheta * ktheta);
}

std::complex<double> wavefunction(const QuantumNumbers& qn, const CylinderGeometry& geom, double theta, double z)
{
    check_z(geom, z);
    const double amplitude =
        std::sin(qn.n_z() * pi * z / geom.length()) / std::sqrt(pi * geom.radius() * geom.length());
    return std::polar(amplitude, qn.n_theta() * theta);
}

double probability_density(const QuantumNumbers& qn, const CylinderGeometry& geom, double /*theta*/, double z)
{
    check_z(geom, z);
    const double s = std::sin(qn.n_z() * pi * z / geom.length());
    return s * s / (pi * geom.radius() * geom.length());
}

std::vector<EnergyLevel> spectrum(const CylinderGeometry& geom, int max_nz, int max_ntheta)
{
    if (max_nz < 1 || max_ntheta < 1) throw std::invalid_argument("spectrum bounds must be >= 1");

    std::vector<EnergyLevel> levels;
    levels.reserve(static_cast<std::size_t>(max_nz) * max_ntheta);
    for (int nz = 1; nz <= max_nz; ++nz)
        for (int nt = 1; nt <= max_ntheta; ++nt) {
            QuantumNumbers qn(nz, nt);
            levels.push_back({qn, energy(qn, geom)});
        }
    std::stable_sort(levels.begin(), levels.end(),
                     [](const EnergyLevel& a, const EnergyLevel& b) { return a.energy < b.energy; });
    return levels;
}

std::vector<DegeneracyGroup> degeneracy_groups(const std::vector<EnergyLevel>& levels, double rel_tol)
{
    if (!(rel_tol > 0.0)) throw std::invalid_argument("degeneracy tolerance must be positive");

    std::vector<DegeneracyGroup> groups;
    std::size_t begin = 0;
    while (begin < levels.size()) {
        std::size_t end = begin + 1;
        while (end < levels.size()) {
            const double a = levels[end - 1].energy;
            const double b = levels[end].energy;
            if (std::abs(a - b) > rel_tol * std::max(a, b)) break;
            ++end;
        }
        DegeneracyGroup g;
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            g.members.push_back(levels[i].qn);
            sum += levels[i].energy;
        }
        std::sort(g.members.begin(), g.members.end());
        g.members.erase(std::unique(g.members.begin(), g.members.end()), g.members.end());
        g.energy = sum / static_cast<double>(end - begin);
        groups.push_back(std::move(g));
        begin = end;
    }
    return groups;
}

double normalization_residual(const QuantumNumbers& qn, const CylinderGeometry& geom, int quadrature_nodes)
{
    if (quadrature_nodes < 1) throw std::invalid_argument("quadrature_nodes must be positive");

    const auto theta_rule = quadrature::periodic_trapezoid(quadrature_nodes);
    const auto z_rule = quadrature::composite_gauss_legendre(quadrature_nodes, 0.0, geom.length());

    double total = 0.0;
    for (std::size_t i = 0; i < theta_rule.size(); ++i) {
        const double theta = theta_rule.nodes[i];
        const double column = z_rule.integrate([&](double z) { return std::norm(wavefunction(qn, geom, theta, z)); });
        total += theta_rule.weights[i] * geom.radius() * column;
    }
    return std::abs(total - 1.0);
}

}  // namespace qpsc
