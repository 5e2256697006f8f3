#include "qpsc/kernels.hpp"

#include "qpsc/perturbation.hpp"

#include <vector>

namespace qpsc::kernels {

using cd = std::complex<double>;

namespace {

cd element(const QuantumNumbers& a, const QuantumNumbers& b, const MomentTable& moments, Coupling beta,
           const CylinderGeometry& geom)
{
    return matrix_element(a, b, moments(b.n_theta() - a.n_theta()), beta, geom);
}

// One theta row of the surface integral: the full integrand at every z node,
// summed, then scaled by the theta weight and the measure factor R.
cd theta_row(std::size_t t, const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec,
             Coupling beta, const CylinderGeometry& geom, const quadrature::Rule& theta_rule,
             const quadrature::Rule& z_rule, SurfaceIntegrand integrand)
{
    const double theta = theta_rule.nodes[t];
    cd row = 0.0;
    for (std::size_t k = 0; k < z_rule.size(); ++k) {
        const double z = z_rule.nodes[k];
        const cd bra = std::conj(wavefunction(i, geom, theta, z));
        const cd ket = wavefunction(j, geom, theta, z);
        const cd value = integrand == SurfaceIntegrand::Hamiltonian
                             ? bra * (beta.value() * z * evaluate(spec, theta)) * ket
                             : bra * ket;
        row += z_rule.weights[k] * value;
    }
    return theta_rule.weights[t] * geom.radius() * row;
}

}  // namespace

ComplexMatrix perturbation_matrix_serial(std::span<const QuantumNumbers> states, const MomentTable& moments,
                                         Coupling beta, const CylinderGeometry& geom)
{
    const std::size_t n = states.size();
    ComplexMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = element(states[i], states[j], moments, beta, geom);
    return p;
}

ComplexMatrix perturbation_matrix_parallel(std::span<const QuantumNumbers> states, const MomentTable& moments,
                                           Coupling beta, const CylinderGeometry& geom)
{
    const auto n = static_cast<std::ptrdiff_t>(states.size());
    ComplexMatrix p(states.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        for (std::ptrdiff_t j = 0; j < n; ++j) p(i, j) = element(states[i], states[j], moments, beta, geom);
    return p;
}

cd surface_integral_serial(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec,
                           Coupling beta, const CylinderGeometry& geom, const quadrature::Rule& theta_rule,
                           const quadrature::Rule& z_rule, SurfaceIntegrand integrand)
{
    cd total = 0.0;
    for (std::size_t t = 0; t < theta_rule.size(); ++t)
        total += theta_row(t, i, j, spec, beta, geom, theta_rule, z_rule, integrand);
    return total;
}

cd surface_integral_parallel(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec,
                             Coupling beta, const CylinderGeometry& geom, const quadrature::Rule& theta_rule,
                             const quadrature::Rule& z_rule, SurfaceIntegrand integrand)
{
    const auto rows = static_cast<std::ptrdiff_t>(theta_rule.size());
    std::vector<cd> partial(theta_rule.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < rows; ++t)
        partial[t] = theta_row(static_cast<std::size_t>(t), i, j, spec, beta, geom, theta_rule, z_rule, integrand);

    cd total = 0.0;
    for (const cd& x : partial) total += x;
    return total;
}

}  // namespace qpsc::kernels
