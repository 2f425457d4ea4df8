#include "sphtrunc/relaxation.h"

#include <cmath>

namespace sphtrunc
{
void RelaxationConfig::validate() const
{
    if (!(p0 > 0.0))
        throw ConfigError("relaxation p0 must be positive");
    if (!(step_scale > 0.0 && step_scale <= 0.5))
        throw ConfigError("relaxation step_scale must lie in (0, 0.5]");
    if (!(residual_tol > 0.0))
        throw ConfigError("relaxation residual_tol must be positive");
    if (max_steps < 0)
        throw ConfigError("relaxation max_steps must be non-negative");
    if (!(dp > 0.0) || !(h_ratio > 0.0) || !(rho > 0.0))
        throw ConfigError("relaxation dp, h_ratio and rho must be positive");
    if (band_refinement < 1)
        throw ConfigError("relaxation band_refinement must be at least 1");
}

template <int Dim>
PointArray<Dim> relax_accelerations(const PointArray<Dim> &positions, std::span<const double> volumes,
                                    const Kernel &kernel, const NeighborList<Dim> &neighbors, double p0, double rho,
                                    std::size_t *isolated)
{
    (void)positions;
    const double factor = -2.0 * p0 / rho;
    PointArray<Dim> acc(neighbors.size(), Vec<Dim>::Zero());
    std::size_t lonely = 0;
    for (std::size_t i = 0; i < neighbors.size(); ++i)
    {
        const auto list = neighbors.of(i);
        if (list.empty())
        {
            ++lonely;
            continue;
        }
        Vec<Dim> sum = Vec<Dim>::Zero();
        for (const auto &nb : list)
            sum += (kernel.derivative(nb.r) * volumes[nb.j]) * nb.e;
        acc[i] = factor * sum;
    }
    if (isolated)
        *isolated = lonely;
    return acc;
}

template <int Dim>
double relaxation_residual(const PointArray<Dim> &accelerations, double h, double rho, double p0)
{
    if (accelerations.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto &a : accelerations)
        sum += a.norm();
    return sum / static_cast<double>(accelerations.size()) * h * rho / p0;
}

template <int Dim>
RelaxationResult<Dim> relax(const RelaxationConfig &config, const PointArray<Dim> &initial,
                            const std::optional<PeriodicBox<Dim>> &periodic)
{
    config.validate();
    const double h = config.h_ratio * config.dp;
    const Kernel kernel(config.kernel, h, Dim);
    const std::size_t n = initial.size();
    const double volume = std::pow(config.dp, Dim);

    PointArray<Dim> band;
    double band_volume = 0.0;
    if (!periodic && config.exterior_band)
    {
        const double spacing = config.dp / config.band_refinement;
        band = exterior_band<Dim>(config.shape, spacing, kernel.cutoff());
        band_volume = std::pow(spacing, Dim);
    }

    RelaxationResult<Dim> result;
    result.volumes.assign(n, volume);
    PointArray<Dim> all(initial.begin(), initial.end());
    all.insert(all.end(), band.begin(), band.end());
    std::vector<double> volumes(n, volume);
    volumes.resize(n + band.size(), band_volume);

    const double dt_star = h / std::sqrt(config.p0 / config.rho);
    const double move_scale = config.step_scale * dt_star * dt_star;
    const double cap = 0.25 * config.dp;

    for (int step = 0;; ++step)
    {
        const auto neighbors = build_neighbors<Dim>(all, kernel.cutoff(), periodic, n);
        const auto acc = relax_accelerations<Dim>(all, volumes, kernel, neighbors, config.p0, config.rho,
                                                  &result.isolated_particles);
        const double residual = relaxation_residual<Dim>(acc, h, config.rho, config.p0);
        if (!std::isfinite(residual))
            throw NonConvergenceError("relaxation residual is not finite");
        result.residual_history.push_back(residual);
        if (step >= 100 && residual > 10.0 * result.residual_history[step - 100])
            throw NonConvergenceError("relaxation diverged: residual grew tenfold within 100 steps");
        if (residual < config.residual_tol)
        {
            result.converged = true;
            break;
        }
        if (step >= config.max_steps)
            break;

        for (std::size_t i = 0; i < n; ++i)
        {
            Vec<Dim> dx = move_scale * acc[i];
            const double len = dx.norm();
            if (len > cap)
                dx *= cap / len;
            Vec<Dim> &x = all[i];
            x += dx;
            if (periodic)
            {
                const Vec<Dim> L = periodic->extent();
                for (int k = 0; k < Dim; ++k)
                    x[k] -= L[k] * std::floor((x[k] - periodic->lower[k]) / L[k]);
            }
            else if (signed_distance(config.shape, x) > 0.0)
            {
                x = project_to_surface<Dim>(config.shape, x);
            }
        }
        result.steps = step + 1;
    }
    result.positions.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    return result;
}

template <int Dim>
RelaxationResult<Dim> relax_shape(const RelaxationConfig &config)
{
    config.validate();
    return relax<Dim>(config, lattice_fill<Dim>(config.shape, config.dp));
}

#define SPHTRUNC_INSTANTIATE(D)                                                                                        \
    template PointArray<D> relax_accelerations<D>(const PointArray<D> &, std::span<const double>, const Kernel &,     \
                                                  const NeighborList<D> &, double, double, std::size_t *);             \
    template double relaxation_residual<D>(const PointArray<D> &, double, double, double);                             \
    template RelaxationResult<D> relax<D>(const RelaxationConfig &, const PointArray<D> &,                            \
                                          const std::optional<PeriodicBox<D>> &);                                      \
    template RelaxationResult<D> relax_shape<D>(const RelaxationConfig &);
SPHTRUNC_INSTANTIATE(2)
SPHTRUNC_INSTANTIATE(3)
#undef SPHTRUNC_INSTANTIATE
} // namespace sphtrunc
