#include "qpsc/perturbation.hpp"

#include "qpsc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpsc {

using cd = std::complex<double>;

namespace {

constexpr double block_hermiticity_tolerance = 1e-10;
constexpr double denominator_tolerance = 1e-9;

int max_theta_gap(const std::vector<QuantumNumbers>& states)
{
    if (states.empty()) return 0;
    const auto [lo, hi] = std::minmax_element(states.begin(), states.end(), [](const auto& a, const auto& b) {
        return a.n_theta() < b.n_theta();
    });
    return hi->n_theta() - lo->n_theta();
}

}  // namespace

Coupling::Coupling(double beta) : beta_(beta)
{
    if (!std::isfinite(beta)) throw std::invalid_argument("coupling must be finite");
}

double z_overlap(int n_i, int n_j, double length)
{
    if (n_i < 1 || n_j < 1) throw std::invalid_argument("z quantum numbers must be >= 1");
    const double l2 = length * length;
    if (n_i == n_j) return 0.25 * l2;
    if ((n_i + n_j) % 2 == 0) return 0.0;
    // product-to-sum: 1/2 [cos(d pi z/L) - cos(s pi z/L)], and
    // integral_0^L z cos(k pi z / L) dz = L^2 ((-1)^k - 1) / (k pi)^2
    const double d = n_i - n_j;
    const double s = n_i + n_j;
    return l2 / (pi * pi) * (1.0 / (s * s) - 1.0 / (d * d));
}

cd matrix_element(const QuantumNumbers& i, const QuantumNumbers& j, cd angular, Coupling beta,
                  const CylinderGeometry& geom)
{
    const double overlap = z_overlap(i.n_z(), j.n_z(), geom.length());
    if (overlap == 0.0) return 0.0;
    return beta.value() / (pi * geom.length()) * overlap * angular;
}

cd matrix_element(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec, Coupling beta,
                  const CylinderGeometry& geom)
{
    if (z_overlap(i.n_z(), j.n_z(), geom.length()) == 0.0) return 0.0;
    return matrix_element(i, j, moment(spec, j.n_theta() - i.n_theta()), beta, geom);
}

double nondegenerate_correction(const QuantumNumbers& /*qn*/, const PotentialSpec& spec, Coupling beta,
                                const CylinderGeometry& geom)
{
    return beta.value() * geom.length() * moment(spec, 0).real() / (4.0 * pi);
}

PerturbationBlock build_block(const DegeneracyGroup& group, const PotentialSpec& spec, Coupling beta,
                              const CylinderGeometry& geom)
{
    if (group.members.empty()) throw std::invalid_argument("degeneracy group is empty");

    const MomentTable moments(spec, max_theta_gap(group.members));
    PerturbationBlock block{group, kernels::perturbation_matrix_parallel(group.members, moments, beta, geom)};

    const double defect = block.matrix.hermiticity_defect();
    if (defect > block_hermiticity_tolerance)
        throw NumericalFault("perturbation block not Hermitian (relative defect " + std::to_string(defect) + ")");
    return block;
}

CorrectionResult solve_block(const PerturbationBlock& block)
{
    auto eig = hermitian_eigensystem(block.matrix);
    return {std::move(eig.values), std::move(eig.vectors)};
}

std::array<double, 2> two_level_corrections(const PerturbationBlock& block)
{
    const auto& h = block.matrix;
    if (h.size() != 2) throw std::invalid_argument("two_level_corrections needs a 2x2 block");
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    // H_ab H_ba = |H_ab|^2 for a Hermitian block
    const double product = (h(0, 1) * h(1, 0)).real();
    const double root = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * product));
    return {0.5 * (a + d) - 0.5 * root, 0.5 * (a + d) + 0.5 * root};
}

bool splitting_rule(int n_zi, int n_zj) { return n_zi != n_zj && (n_zi + n_zj) % 2 != 0; }

bool adjacent_splitting_rule(int n_zi, int n_zj) { return std::abs(n_zi - n_zj) == 1; }

StateCorrection state_correction(const QuantumNumbers& qn, const PotentialSpec& spec, Coupling beta,
                                 const CylinderGeometry& geom, int max_nz, int max_ntheta)
{
    if (max_nz < 1 || max_ntheta < 1) throw std::invalid_argument("enumeration bounds must be >= 1");

    StateCorrection out{qn, {}, max_nz, max_ntheta};
    const double e_target = energy(qn, geom);
    const int gap = std::max(max_ntheta, qn.n_theta());
    const MomentTable moments(spec, gap);

    for (int nz = 1; nz <= max_nz; ++nz) {
        for (int nt = 1; nt <= max_ntheta; ++nt) {
            const QuantumNumbers m(nz, nt);
            if (m == qn) continue;
            const cd h = matrix_element(m, qn, moments(qn.n_theta() - nt), beta, geom);
            if (h == cd(0.0)) continue;
            const double e_m = energy(m, geom);
            if (std::abs(e_target - e_m) <= denominator_tolerance * std::max(e_target, e_m))
                throw DegenerateDenominator("state (" + std::to_string(nz) + ", " + std::to_string(nt) +
                                            ") is degenerate with the target; use the degenerate block");
            out.coefficients.emplace(m, h / (e_target - e_m));
        }
    }
    return out;
}

}  // namespace qpsc
