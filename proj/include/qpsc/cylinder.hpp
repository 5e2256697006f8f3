#pragma once

// Unperturbed eigenstates of a particle confined to the lateral surface of a
// cylinder: periodic in theta, box-bounded (Dirichlet) in z.

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qpsc {

inline constexpr double pi = std::numbers::pi;

/// Quantum numbers (n_z, n_theta) of an unperturbed state. Both are >= 1.
class QuantumNumbers {
public:
    QuantumNumbers(int n_z, int n_theta);

    int n_z() const noexcept { return n_z_; }
    int n_theta() const noexcept { return n_theta_; }

    friend auto operator<=>(const QuantumNumbers&, const QuantumNumbers&) = default;

private:
    int n_z_;
    int n_theta_;
};

/// Radius, length, mass and action constant. Natural units by default.
class CylinderGeometry {
public:
    CylinderGeometry(double radius, double length = 1.0, double mass = 1.0, double hbar = 1.0);

    /// The geometry R = L/pi where E is proportional to n_z^2 + n_theta^2.
    static CylinderGeometry degenerate(double length = 1.0, double mass = 1.0, double hbar = 1.0);

    double radius() const noexcept { return radius_; }
    double length() const noexcept { return length_; }
    double mass() const noexcept { return mass_; }
    double hbar() const noexcept { return hbar_; }

    /// 1/R, stored as exactly pi/L when R was built as L/pi so that the
    /// degenerate spectrum is swap-symmetric bit for bit.
    double inverse_radius() const noexcept { return inverse_radius_; }

private:
    double radius_;
    double inverse_radius_;
    double length_;
    double mass_;
    double hbar_;
};

struct EnergyLevel {
    QuantumNumbers qn;
    double energy;
};

/// Maximal run of adjacent levels whose energies coincide within tolerance.
struct DegeneracyGroup {
    std::vector<QuantumNumbers> members;  // sorted lexicographically
    double energy;                        // mean of the member energies

    std::size_t multiplicity() const noexcept { return members.size(); }
};

class DomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

inline constexpr double default_degeneracy_tolerance = 1e-9;

double energy(const QuantumNumbers& qn, const CylinderGeometry& geom);

/// Throws DomainError when z lies outside [0, L].
std::complex<double> wavefunction(const QuantumNumbers& qn, const CylinderGeometry& geom, double theta,
                                  double z);

double probability_density(const QuantumNumbers& qn, const CylinderGeometry& geom, double theta, double z);

/// All max_nz * max_ntheta levels, ascending in energy, ties broken by (n_z, n_theta).
std::vector<EnergyLevel> spectrum(const CylinderGeometry& geom, int max_nz, int max_ntheta);

/// Partition an ascending level list. Adjacent levels join when
/// |E_i - E_j| <= rel_tol * max(E_i, E_j); groups are the transitive closure.
std::vector<DegeneracyGroup> degeneracy_groups(const std::vector<EnergyLevel>& levels,
                                               double rel_tol = default_degeneracy_tolerance);

/// |integral of |psi|^2 R dtheta dz - 1| on a product Gauss-Legendre grid.
double normalization_residual(const QuantumNumbers& qn, const CylinderGeometry& geom, int quadrature_nodes);

}  // namespace qpsc
