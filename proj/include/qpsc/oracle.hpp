#pragma once

// Independent ground truth for the closed forms: brute-force surface
// quadrature of single matrix elements, and exact diagonalization of the full
// perturbed Hamiltonian in a truncated product basis.

#include "qpsc/cylinder.hpp"
#include "qpsc/hermitian.hpp"
#include "qpsc/kernels.hpp"
#include "qpsc/perturbation.hpp"
#include "qpsc/potential.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qpsc {

/// States (n_z, n_theta) for 1 <= n_z <= max_nz, 1 <= n_theta <= max_ntheta in
/// lexicographic order; matrix row k is states[k].
class TruncatedBasis {
public:
    TruncatedBasis(int max_nz, int max_ntheta);

    int max_nz() const noexcept { return max_nz_; }
    int max_ntheta() const noexcept { return max_ntheta_; }
    const std::vector<QuantumNumbers>& states() const noexcept { return states_; }
    std::size_t dimension() const noexcept { return states_.size(); }

    std::optional<std::size_t> index_of(const QuantumNumbers& qn) const;
    /// On the outer edge of the rectangle (n_z == max_nz or n_theta == max_ntheta).
    bool on_boundary(const QuantumNumbers& qn) const;

private:
    int max_nz_;
    int max_ntheta_;
    std::vector<QuantumNumbers> states_;
};

/// H = diag(E0) + beta * P, assembled with the OpenMP kernel.
ComplexMatrix assemble_hamiltonian(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                                   const CylinderGeometry& geom);

/// Same matrix through the serial reference kernel.
ComplexMatrix assemble_hamiltonian_serial(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                                          const CylinderGeometry& geom);

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending
    TruncatedBasis basis;
    Coupling beta;
};

SpectralResult exact_spectrum(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                              const CylinderGeometry& geom);

using kernels::SurfaceIntegrand;

/// Brute-force product Gauss-Legendre integration of
/// beta R * integral conj(psi_i) z V psi_j dtheta dz (or of the plain overlap).
std::complex<double> quadrature_element(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec,
                                        Coupling beta, const CylinderGeometry& geom, int nodes_theta, int nodes_z,
                                        SurfaceIntegrand integrand = SurfaceIntegrand::Hamiltonian);

class BasisTooSmall : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SlopeSample {
    double beta;
    std::vector<double> eigenvalues;     // tracked levels at +beta, ascending
    std::vector<double> slopes;          // (lambda - E0) / beta
    std::vector<double> central_slopes;  // (lambda(+beta) - lambda(-beta)) / (2 beta), matched by direction
    double residual;                     // max_k |slopes[k] - predicted[k]|
    double central_residual;             // max_k |central_slopes[k] - predicted[k]|
};

struct SlopeReport {
    std::vector<QuantumNumbers> targets;
    double unperturbed_energy;
    std::vector<double> predicted;  // first-order corrections per unit beta, ascending
    double boundary_weight;         // largest first-order weight on edge states
    std::vector<SlopeSample> samples;

    /// residual(beta_k) / residual(beta_{k+1}) for successive samples.
    std::vector<double> residual_ratios() const;
};

inline constexpr double max_boundary_weight = 1e-6;

/// Tracks the exact eigenvalues connected to a degenerate group (or a single
/// state) as beta shrinks. Levels are followed by the weight of each
/// eigenvector inside the group's unperturbed subspace, never by index.
/// Throws BasisTooSmall when a target is missing from the basis, sits on its
/// edge, or leaks more than max_boundary_weight of first-order weight onto
/// edge states. `betas` must be positive and strictly descending.
SlopeReport perturbation_slope_check(const DegeneracyGroup& group, const PotentialSpec& spec,
                                     const CylinderGeometry& geom, const std::vector<double>& betas,
                                     const TruncatedBasis& basis);

/// Several groups against the same eigendecompositions (two per beta).
std::vector<SlopeReport> perturbation_slope_check(const std::vector<DegeneracyGroup>& groups,
                                                  const PotentialSpec& spec, const CylinderGeometry& geom,
                                                  const std::vector<double>& betas, const TruncatedBasis& basis);

}  // namespace qpsc
