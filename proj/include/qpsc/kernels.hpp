#pragma once

// Data-parallel inner loops. Each kernel has a serial reference twin that the
// tests compare against bit for bit; the OpenMP versions only distribute
// independent work items and keep every reduction in the serial order.

#include "qpsc/cylinder.hpp"
#include "qpsc/hermitian.hpp"
#include "qpsc/potential.hpp"
#include "qpsc/quadrature.hpp"

#include <complex>
#include <span>

namespace qpsc {
class Coupling;
}

namespace qpsc::kernels {

/// P_ij = matrix_element(states[i], states[j]) with the angular factor taken
/// from `moments` (which must cover every n_theta difference in `states`).
ComplexMatrix perturbation_matrix_serial(std::span<const QuantumNumbers> states, const MomentTable& moments,
                                         Coupling beta, const CylinderGeometry& geom);
ComplexMatrix perturbation_matrix_parallel(std::span<const QuantumNumbers> states, const MomentTable& moments,
                                           Coupling beta, const CylinderGeometry& geom);

enum class SurfaceIntegrand {
    Hamiltonian,  // conj(psi_i) * beta * z * V(theta) * psi_j
    Overlap,      // conj(psi_i) * psi_j
};

/// Product-rule integral of the integrand over the cylinder surface with
/// measure R dtheta dz. Inner sums run over z for each theta node; the outer
/// sum adds the per-theta partials in node order.
std::complex<double> surface_integral_serial(const QuantumNumbers& i, const QuantumNumbers& j,
                                             const PotentialSpec& spec, Coupling beta, const CylinderGeometry& geom,
                                             const quadrature::Rule& theta_rule, const quadrature::Rule& z_rule,
                                             SurfaceIntegrand integrand);
std::complex<double> surface_integral_parallel(const QuantumNumbers& i, const QuantumNumbers& j,
                                               const PotentialSpec& spec, Coupling beta,
                                               const CylinderGeometry& geom, const quadrature::Rule& theta_rule,
                                               const quadrature::Rule& z_rule, SurfaceIntegrand integrand);

}  // namespace qpsc::kernels
