#include "qpsc/kernels.hpp"
#include "qpsc/oracle.hpp"
#include "qpsc/perturbation.hpp"

#include <benchmark/benchmark.h>

using namespace qpsc;

namespace {

const CylinderGeometry geom = CylinderGeometry::degenerate();
const PotentialSpec potential = parse_potential("1.0*cos(theta) + 0.5*sin(1.5*theta) + 0.1*theta^2");

template <class Kernel>
void assembly(benchmark::State& state, Kernel kernel)
{
    const TruncatedBasis basis(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const MomentTable moments(potential, basis.max_ntheta() - 1);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(basis.states(), moments, Coupling(1.0), geom));
    state.counters["dim"] = static_cast<double>(basis.dimension());
}

template <class Kernel>
void surface(benchmark::State& state, Kernel kernel)
{
    const int nodes = static_cast<int>(state.range(0));
    const auto theta = quadrature::composite_gauss_legendre(nodes, 0.0, 2 * pi);
    const auto z = quadrature::composite_gauss_legendre(nodes, 0.0, geom.length());
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kernel({1, 2}, {2, 1}, potential, Coupling(1.0), geom, theta, z, kernels::SurfaceIntegrand::Hamiltonian));
}

void BM_assembly_serial(benchmark::State& s) { assembly(s, kernels::perturbation_matrix_serial); }
void BM_assembly_parallel(benchmark::State& s) { assembly(s, kernels::perturbation_matrix_parallel); }
void BM_surface_serial(benchmark::State& s) { surface(s, kernels::surface_integral_serial); }
void BM_surface_parallel(benchmark::State& s) { surface(s, kernels::surface_integral_parallel); }

}  // namespace

BENCHMARK(BM_assembly_serial)->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(BM_assembly_parallel)->Arg(12)->Arg(24)->Arg(40);
BENCHMARK(BM_surface_serial)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_surface_parallel)->Arg(128)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
