#pragma once

// First-order perturbation theory for H = H0 + beta * z * V(theta).
//
// Every matrix element factorizes:
//   H_ij = beta R * integral conj(psi_i) z V psi_j dtheta dz
//        = (beta / (pi L)) * z_overlap(n_z_i, n_z_j, L) * moment(V, n_theta_j - n_theta_i)
// R cancels between the measure and the normalization 1/(pi R L).

#include "qpsc/cylinder.hpp"
#include "qpsc/hermitian.hpp"
#include "qpsc/potential.hpp"

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace qpsc {

/// The constant beta in beta * z * V(theta). Any finite sign.
class Coupling {
public:
    explicit Coupling(double beta);
    double value() const noexcept { return beta_; }

private:
    double beta_;
};

/// integral_0^L z sin(n_i pi z / L) sin(n_j pi z / L) dz, in closed form.
double z_overlap(int n_i, int n_j, double length);

/// H_ij when the angular moment is already known.
std::complex<double> matrix_element(const QuantumNumbers& i, const QuantumNumbers& j, std::complex<double> angular,
                                    Coupling beta, const CylinderGeometry& geom);

std::complex<double> matrix_element(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec,
                                    Coupling beta, const CylinderGeometry& geom);

/// beta L I_0 / (4 pi). The same for every state: <z> = L/2 in any sine mode.
double nondegenerate_correction(const QuantumNumbers& qn, const PotentialSpec& spec, Coupling beta,
                                const CylinderGeometry& geom);

struct PerturbationBlock {
    DegeneracyGroup group;
    ComplexMatrix matrix;  // rows and columns follow group.members

    const std::vector<QuantumNumbers>& basis_order() const noexcept { return group.members; }
};

/// Raised when a freshly built block fails the hermiticity check.
class NumericalFault : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

PerturbationBlock build_block(const DegeneracyGroup& group, const PotentialSpec& spec, Coupling beta,
                              const CylinderGeometry& geom);

struct CorrectionResult {
    std::vector<double> corrections;  // ascending E^(1)
    ComplexMatrix mixing;             // column k: unit eigenvector for corrections[k]
};

CorrectionResult solve_block(const PerturbationBlock& block);

/// Roots 0.5 (a + d) -+ 0.5 sqrt((a - d)^2 + 4 H_ab H_ba) of a 2x2 block, ascending.
/// Throws std::invalid_argument for other sizes.
std::array<double, 2> two_level_corrections(const PerturbationBlock& block);

/// True iff z_overlap(n_i, n_j) != 0 for n_i != n_j, i.e. n_i + n_j odd.
bool splitting_rule(int n_zi, int n_zj);

/// The narrower |n_zi - n_zj| == 1 form of the rule; used to annotate where it
/// disagrees with splitting_rule (first at a difference of 3).
bool adjacent_splitting_rule(int n_zi, int n_zj);

struct StateCorrection {
    QuantumNumbers target;
    std::map<QuantumNumbers, std::complex<double>> coefficients;  // c_m, target excluded, zeros omitted
    int max_nz;
    int max_ntheta;
};

class DegenerateDenominator : public std::domain_error {
    using std::domain_error::domain_error;
};

/// First-order state coefficients c_m = H_{m,target} / (E_target - E_m) over
/// the rectangle [1, max_nz] x [1, max_ntheta]. Throws DegenerateDenominator
/// when some coupled m has |E_target - E_m| <= 1e-9 * max(E).
StateCorrection state_correction(const QuantumNumbers& qn, const PotentialSpec& spec, Coupling beta,
                                 const CylinderGeometry& geom, int max_nz, int max_ntheta);

}  // namespace qpsc
