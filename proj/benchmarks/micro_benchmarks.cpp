#include "sphtrunc/correction.h"
#include "sphtrunc/eulerian/fluid.h"
#include "sphtrunc/geometry.h"
#include "sphtrunc/tlsph.h"

#include <benchmark/benchmark.h>

using namespace sphtrunc;

namespace
{
KernelFamily family_of(const benchmark::State &state)
{
    return state.range(0) == 0 ? KernelFamily::WendlandStandard : KernelFamily::WendlandTruncated;
}

PointArray<2> unit_square(double dp)
{
    return lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
}

void kernel_derivative(benchmark::State &state)
{
    const Kernel k(family_of(state), 1.0, 2);
    double r = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(k.derivative(r));
        r = r > 1.9 ? 0.0 : r + 1e-3;
    }
    state.SetLabel(std::string(to_string(k.family())));
}

void neighbor_build(benchmark::State &state)
{
    const double dp = 1.0 / 128.0;
    const auto x = unit_square(dp);
    const Kernel k(family_of(state), 1.3 * dp, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_neighbors<2>(x, k.cutoff()));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

void correction_matrices(benchmark::State &state)
{
    const double dp = 1.0 / 128.0;
    const auto x = unit_square(dp);
    const Kernel k(family_of(state), 1.3 * dp, 2);
    const auto list = build_neighbors<2>(x, k.cutoff());
    const std::vector<double> vol(x.size(), dp * dp);
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_corrections<2>(list, k, vol));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

void fluid_rhs(benchmark::State &state)
{
    const double dp = 1.0 / 64.0;
    const auto x = unit_square(dp);
    FluidConfig config;
    config.kernel = family_of(state);
    config.dp = dp;
    config.solver = RiemannSolverKind::Linearised;
    config.eos = EosParams::weakly_compressible(1.0, 1.0);
    EulerianSolver<2> solver(config, x, {}, PeriodicBox<2>{Vec2::Zero(), Vec2::Ones()});
    PointArray<2> v;
    for (const auto &p : x)
        v.emplace_back(std::sin(6.283185307179586 * p.y()), 0.0);
    solver.set_state(std::vector<double>(x.size(), 1.0), v, std::vector<double>(x.size(), 0.0));
    FluidRates<2> rates;
    for (auto _ : state)
    {
        solver.rhs(rates);
        benchmark::DoNotOptimize(rates.rho.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(solver.pair_count()));
}

void tlsph_step(benchmark::State &state)
{
    const double dp = 1.0 / 6.0;
    const auto setup = make_column(ColumnCase::Bend, dp, 3);
    SolidConfig config;
    config.kernel = family_of(state);
    config.dp = dp;
    TotalLagrangianSolver<3> solver(config, setup.positions, setup.fixed);
    solver.set_velocity(init_case_velocity(ColumnCase::Bend, setup));
    const double dt = solver.compute_dt();
    for (auto _ : state)
        solver.step(dt);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(solver.size()));
}
} // namespace

BENCHMARK(kernel_derivative)->Arg(0)->Arg(1);
BENCHMARK(neighbor_build)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(correction_matrices)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(fluid_rhs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(tlsph_step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
