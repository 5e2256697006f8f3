#include "qpsc/oracle.hpp"

#include "qpsc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qpsc {

using cd = std::complex<double>;

TruncatedBasis::TruncatedBasis(int max_nz, int max_ntheta) : max_nz_(max_nz), max_ntheta_(max_ntheta)
{
    if (max_nz < 1 || max_ntheta < 1) throw std::invalid_argument("basis bounds must be >= 1");
    states_.reserve(static_cast<std::size_t>(max_nz) * max_ntheta);
    for (int nz = 1; nz <= max_nz; ++nz)
        for (int nt = 1; nt <= max_ntheta; ++nt) states_.emplace_back(nz, nt);
}

std::optional<std::size_t> TruncatedBasis::index_of(const QuantumNumbers& qn) const
{
    if (qn.n_z() > max_nz_ || qn.n_theta() > max_ntheta_) return std::nullopt;
    return static_cast<std::size_t>(qn.n_z() - 1) * max_ntheta_ + (qn.n_theta() - 1);
}

bool TruncatedBasis::on_boundary(const QuantumNumbers& qn) const
{
    return qn.n_z() == max_nz_ || qn.n_theta() == max_ntheta_;
}

namespace {

template <class Kernel>
ComplexMatrix assemble(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                       const CylinderGeometry& geom, Kernel kernel)
{
    const MomentTable moments(spec, basis.max_ntheta() - 1);
    ComplexMatrix h = kernel(basis.states(), moments, beta, geom);
    for (std::size_t k = 0; k < basis.dimension(); ++k) h(k, k) += energy(basis.states()[k], geom);
    return h;
}

struct Tracked {
    std::vector<double> values;            // ascending
    std::vector<std::vector<cd>> vectors;  // matching values
};

// The k eigenpairs with the largest weight inside the target subspace.
Tracked track(const Eigensystem& eig, const std::vector<std::size_t>& target_rows)
{
    const std::size_t n = eig.values.size();
    std::vector<double> weight(n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r : target_rows) weight[c] += std::norm(eig.vectors(r, c));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });
    order.resize(target_rows.size());
    std::sort(order.begin(), order.end());  // eigenvalues are already ascending by column

    Tracked out;
    for (std::size_t c : order) {
        out.values.push_back(eig.values[c]);
        std::vector<cd> v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = eig.vectors(r, c);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

double overlap(const std::vector<cd>& a, const std::vector<cd>& b)
{
    cd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return std::abs(s);
}

}  // namespace

ComplexMatrix assemble_hamiltonian(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                                   const CylinderGeometry& geom)
{
    return assemble(basis, spec, beta, geom, kernels::perturbation_matrix_parallel);
}

ComplexMatrix assemble_hamiltonian_serial(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                                          const CylinderGeometry& geom)
{
    return assemble(basis, spec, beta, geom, kernels::perturbation_matrix_serial);
}

SpectralResult exact_spectrum(const TruncatedBasis& basis, const PotentialSpec& spec, Coupling beta,
                              const CylinderGeometry& geom)
{
    return {exact_eigenvalues(assemble_hamiltonian(basis, spec, beta, geom)), basis, beta};
}

cd quadrature_element(const QuantumNumbers& i, const QuantumNumbers& j, const PotentialSpec& spec, Coupling beta,
                      const CylinderGeometry& geom, int nodes_theta, int nodes_z, SurfaceIntegrand integrand)
{
    const auto theta_rule = quadrature::composite_gauss_legendre(nodes_theta, 0.0, 2.0 * pi);
    const auto z_rule = quadrature::composite_gauss_legendre(nodes_z, 0.0, geom.length());
    return kernels::surface_integral_parallel(i, j, spec, beta, geom, theta_rule, z_rule, integrand);
}

std::vector<double> SlopeReport::residual_ratios() const
{
    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k)
        ratios.push_back(samples[k].residual / samples[k + 1].residual);
    return ratios;
}

namespace {

void check_betas(const std::vector<double>& betas)
{
    if (betas.empty()) throw std::invalid_argument("slope check needs at least one beta");
    for (std::size_t k = 0; k < betas.size(); ++k) {
        if (!(betas[k] > 0.0) || !std::isfinite(betas[k])) throw std::invalid_argument("betas must be positive");
        if (k > 0 && !(betas[k] < betas[k - 1])) throw std::invalid_argument("betas must be strictly descending");
    }
}

std::vector<std::size_t> target_rows(const DegeneracyGroup& group, const TruncatedBasis& basis)
{
    if (group.members.empty()) throw std::invalid_argument("slope check needs at least one target state");
    std::vector<std::size_t> rows;
    for (const auto& qn : group.members) {
        const auto idx = basis.index_of(qn);
        const std::string label = "(" + std::to_string(qn.n_z()) + ", " + std::to_string(qn.n_theta()) + ")";
        if (!idx) throw BasisTooSmall("target " + label + " is outside the truncated basis");
        if (basis.on_boundary(qn)) throw BasisTooSmall("target " + label + " lies on the basis edge");
        rows.push_back(*idx);
    }
    return rows;
}

// First-order leakage of each zeroth-order combination onto edge states.
double boundary_weight(const DegeneracyGroup& group, const std::vector<std::size_t>& rows,
                       const ComplexMatrix& mixing, const ComplexMatrix& h, const TruncatedBasis& basis,
                       const CylinderGeometry& geom)
{
    double worst = 0.0;
    for (std::size_t col = 0; col < mixing.size(); ++col) {
        double weight = 0.0;
        for (std::size_t m = 0; m < basis.dimension(); ++m) {
            if (std::find(rows.begin(), rows.end(), m) != rows.end()) continue;
            cd coupling = 0.0;
            for (std::size_t i = 0; i < rows.size(); ++i) coupling += h(m, rows[i]) * mixing(i, col);
            if (coupling == cd(0.0)) continue;
            const double gap = group.energy - energy(basis.states()[m], geom);
            if (std::abs(gap) <= default_degeneracy_tolerance * group.energy)
                throw std::invalid_argument("targets are not a complete degeneracy group of the basis");
            if (basis.on_boundary(basis.states()[m])) weight += std::norm(coupling / gap);
        }
        worst = std::max(worst, weight);
    }
    return worst;
}

SlopeSample sample_group(double beta, const SlopeReport& report, const Tracked& plus, const Tracked& minus)
{
    SlopeSample sample{beta, plus.values, {}, {}, 0.0, 0.0};
    std::vector<bool> used(minus.values.size(), false);
    for (std::size_t k = 0; k < plus.values.size(); ++k) {
        const double slope = (plus.values[k] - report.unperturbed_energy) / beta;
        sample.slopes.push_back(slope);
        sample.residual = std::max(sample.residual, std::abs(slope - report.predicted[k]));

        // partner at -beta: same eigenvector direction, mirrored first-order shift
        std::size_t best = 0;
        double best_overlap = -1.0;
        for (std::size_t q = 0; q < minus.values.size(); ++q) {
            if (used[q]) continue;
            const double o = overlap(plus.vectors[k], minus.vectors[q]);
            if (o > best_overlap) best_overlap = o, best = q;
        }
        used[best] = true;
        const double central = (plus.values[k] - minus.values[best]) / (2.0 * beta);
        sample.central_slopes.push_back(central);
        sample.central_residual = std::max(sample.central_residual, std::abs(central - report.predicted[k]));
    }
    return sample;
}

}  // namespace

std::vector<SlopeReport> perturbation_slope_check(const std::vector<DegeneracyGroup>& groups,
                                                  const PotentialSpec& spec, const CylinderGeometry& geom,
                                                  const std::vector<double>& betas, const TruncatedBasis& basis)
{
    check_betas(betas);

    std::vector<std::vector<std::size_t>> rows;
    for (const auto& g : groups) rows.push_back(target_rows(g, basis));

    const ComplexMatrix h_max = assemble_hamiltonian(basis, spec, Coupling(betas.front()), geom);
    std::vector<SlopeReport> reports;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto unit = solve_block(build_block(groups[g], spec, Coupling(1.0), geom));
        SlopeReport report{groups[g].members, groups[g].energy, unit.corrections, 0.0, {}};
        report.boundary_weight = boundary_weight(groups[g], rows[g], unit.mixing, h_max, basis, geom);
        if (report.boundary_weight > max_boundary_weight)
            throw BasisTooSmall("first-order weight on basis edge states is " +
                                std::to_string(report.boundary_weight));
        reports.push_back(std::move(report));
    }

    for (const double beta : betas) {
        const auto plus = hermitian_eigensystem(assemble_hamiltonian(basis, spec, Coupling(beta), geom));
        const auto minus = hermitian_eigensystem(assemble_hamiltonian(basis, spec, Coupling(-beta), geom));
        for (std::size_t g = 0; g < groups.size(); ++g)
            reports[g].samples.push_back(sample_group(beta, reports[g], track(plus, rows[g]), track(minus, rows[g])));
    }
    return reports;
}

SlopeReport perturbation_slope_check(const DegeneracyGroup& group, const PotentialSpec& spec,
                                     const CylinderGeometry& geom, const std::vector<double>& betas,
                                     const TruncatedBasis& basis)
{
    return perturbation_slope_check(std::vector<DegeneracyGroup>{group}, spec, geom, betas, basis).front();
}

}  // namespace qpsc
