#include "sphtrunc/tlsph.h"

#include "sphtrunc/geometry.h"
#include "sphtrunc/parallel.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sphtrunc
{
LameParameters lame_params(double youngs, double poisson)
{
    if (!(youngs > 0.0))
        throw DomainError("Young's modulus must be positive");
    if (!(poisson > -1.0) || !(poisson < 0.5))
        throw DomainError("Poisson ratio must lie in (-1, 0.5); 0.5 makes lambda singular");
    return {youngs * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson)), youngs / (2.0 * (1.0 + poisson))};
}

void Material::validate() const
{
    if (!(rho0 > 0.0))
        throw ConfigError("material density must be positive");
    try
    {
        (void)lame_params(youngs, poisson);
    }
    catch (const DomainError &e)
    {
        throw ConfigError(e.what());
    }
}

double Material::sound_speed() const
{
    const auto l = lame();
    return std::sqrt((l.lambda + 2.0 * l.shear) / rho0);
}

void SolidConfig::validate() const
{
    if (!(dp > 0.0))
        throw ConfigError("particle spacing must be positive");
    if (!(h_ratio > 0.0))
        throw ConfigError("smoothing length ratio must be positive");
    if (!(cfl > 0.0) || cfl > 1.0)
        throw ConfigError("solid CFL number must lie in (0, 1]");
    if (workers < 1)
        throw ConfigError("worker count must be at least 1");
    if (!(damping >= 0.0))
        throw ConfigError("numerical damping must be non-negative");
    material.validate();
}

template <int Dim>
TotalLagrangianSolver<Dim>::TotalLagrangianSolver(const SolidConfig &config, PointArray<Dim> reference,
                                                  std::vector<bool> fixed)
    : config_(config), kernel_(config.kernel, config.h_ratio * config.dp, Dim), reference_(std::move(reference)),
      fixed_(std::move(fixed))
{
    config_.validate();
    if (reference_.empty())
        throw InputError("solid body has no particles");
    if (fixed_.size() != reference_.size())
        throw InputError("fixed mask size does not match the particle count");
    lame_ = config_.material.lame();
    volume_ = std::pow(config_.dp, Dim);

    neighbors_ = build_neighbors<Dim>(reference_, kernel_.cutoff());
    const std::vector<double> volumes(reference_.size(), volume_);
    if (config_.correction)
        corrections_ = compute_corrections<Dim>(neighbors_, kernel_, volumes);
    else
        corrections_.B.assign(reference_.size(), Mat<Dim>::Identity());

    grad_.reserve(neighbors_.pair_count());
    for (std::size_t i = 0; i < reference_.size(); ++i)
        for (const auto &nb : neighbors_.of(i))
            grad_.push_back(kernel_.derivative(nb.r) * nb.e);

    const std::size_t n = reference_.size();
    positions_ = reference_;
    velocity_.assign(n, Vec<Dim>::Zero());
    accel_.assign(n, Vec<Dim>::Zero());
    F_.assign(n, Mat<Dim>::Identity());
    S_.assign(n, Mat<Dim>::Zero());
    PB_.assign(n, Mat<Dim>::Zero());
    rate_.assign(n, Mat<Dim>::Zero());
    update_stress();
}

template <int Dim>
void TotalLagrangianSolver<Dim>::set_velocity(const PointArray<Dim> &velocity)
{
    if (velocity.size() != size())
        throw InputError("velocity array size does not match the particle count");
    for (std::size_t i = 0; i < size(); ++i)
        velocity_[i] = fixed_[i] ? Vec<Dim>::Zero() : velocity[i];
    for (std::size_t i = 0; i < size(); ++i)
        rate_[i] = deformation_rate(i);
    update_stress();
}

template <int Dim>
void TotalLagrangianSolver<Dim>::set_deformation(const MatrixArray<Dim> &F)
{
    if (F.size() != size())
        throw InputError("deformation array size does not match the particle count");
    F_ = F;
    check_state();
    update_stress();
}

template <int Dim>
void TotalLagrangianSolver<Dim>::update_stress()
{
    const double viscosity =
        config_.damping * config_.material.rho0 * config_.material.sound_speed() * kernel_.h();
    parallel_for(size(), config_.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
        {
            S_[i] = pk2_stress<Dim>(F_[i], lame_);
            Mat<Dim> S = S_[i];
            if (viscosity > 0.0)
                S += viscosity * 0.5 * (rate_[i].transpose() * F_[i] + F_[i].transpose() * rate_[i]);
            PB_[i] = F_[i] * S * corrections_.B[i].transpose();
        }
    });
    accelerations(accel_);
}

template <int Dim>
Mat<Dim> TotalLagrangianSolver<Dim>::deformation_rate(std::size_t i) const
{
    Mat<Dim> sum = Mat<Dim>::Zero();
    std::size_t k = neighbors_.offset(i);
    for (const auto &nb : neighbors_.of(i))
        sum += (velocity_[nb.j] - velocity_[i]) * grad_[k++].transpose();
    return volume_ * sum * corrections_.B[i];
}

template <int Dim>
void TotalLagrangianSolver<Dim>::accelerations(PointArray<Dim> &out) const
{
    out.resize(size());
    const double scale = volume_ / config_.material.rho0;
    parallel_for(size(), config_.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
        {
            Vec<Dim> sum = Vec<Dim>::Zero();
            std::size_t k = neighbors_.offset(i);
            for (const auto &nb : neighbors_.of(i))
                sum += (PB_[i] + PB_[nb.j]) * grad_[k++];
            out[i] = scale * sum;
        }
    });
}

template <int Dim>
double TotalLagrangianSolver<Dim>::compute_dt() const
{
    double vmax = 0.0;
    for (const auto &v : velocity_)
        vmax = std::max(vmax, v.norm());
    return config_.cfl * kernel_.h() / (config_.material.sound_speed() + vmax);
}

template <int Dim>
void TotalLagrangianSolver<Dim>::step(double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw SolverError("solid time step must be positive and finite");
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        if (!fixed_[i])
            velocity_[i] += 0.5 * dt * accel_[i];

    parallel_for(n, config_.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            rate_[i] = deformation_rate(i);
    });
    for (std::size_t i = 0; i < n; ++i)
    {
        positions_[i] += dt * velocity_[i];
        F_[i] += dt * rate_[i];
    }
    check_state();
    update_stress();

    for (std::size_t i = 0; i < n; ++i)
        if (!fixed_[i])
            velocity_[i] += 0.5 * dt * accel_[i];
    time_ += dt;
    ++steps_;
}

template <int Dim>
std::size_t TotalLagrangianSolver<Dim>::advance_to(double t_end,
                                                   const std::function<void(const TotalLagrangianSolver &)> &observer)
{
    std::size_t taken = 0;
    while (time_ < t_end * (1.0 - 1e-12))
    {
        double dt = compute_dt();
        if (time_ + dt > t_end)
            dt = t_end - time_;
        step(dt);
        ++taken;
        if (observer)
            observer(*this);
    }
    return taken;
}

template <int Dim>
void TotalLagrangianSolver<Dim>::check_state() const
{
    for (std::size_t i = 0; i < size(); ++i)
    {
        const double J = F_[i].determinant();
        if (!(J > 0.0) || !F_[i].allFinite())
        {
            std::ostringstream msg;
            msg << "deformation gradient inverted at particle " << i << " (reference position "
                << reference_[i].transpose() << ", det F = " << J << ", t = " << time_ << ")";
            throw SolverError(msg.str());
        }
    }
}

template <int Dim>
Vec<Dim> TotalLagrangianSolver<Dim>::momentum() const
{
    Vec<Dim> sum = Vec<Dim>::Zero();
    for (const auto &v : velocity_)
        sum += v;
    return config_.material.rho0 * volume_ * sum;
}

template <int Dim>
double TotalLagrangianSolver<Dim>::kinetic_energy() const
{
    double sum = 0.0;
    for (const auto &v : velocity_)
        sum += v.squaredNorm();
    return 0.5 * config_.material.rho0 * volume_ * sum;
}

template <int Dim>
double TotalLagrangianSolver<Dim>::strain_energy() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        sum += S_[i].cwiseProduct(green_lagrange_strain<Dim>(F_[i])).sum();
    return 0.5 * volume_ * sum;
}

template <int Dim>
std::vector<double> TotalLagrangianSolver<Dim>::von_mises_field() const
{
    std::vector<double> out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out[i] = von_mises<Dim>(F_[i], S_[i]);
    return out;
}

template class TotalLagrangianSolver<2>;
template class TotalLagrangianSolver<3>;

ColumnSetup make_column(ColumnCase kind, double dp, int clamp_layers, const ColumnGeometry &geometry)
{
    if (!(dp > 0.0) || clamp_layers < 0)
        throw ConfigError("column spacing must be positive and clamp layers non-negative");
    if (!(geometry.width > 0.0) || !(geometry.length > 0.0))
        throw ConfigError("column dimensions must be positive");
    ColumnSetup setup;
    setup.axis = kind == ColumnCase::Bend ? 2 : 1;
    Vec3 lower = Vec3::Zero();
    Vec3 upper = Vec3::Constant(geometry.width);
    lower[setup.axis] = -clamp_layers * dp;
    upper[setup.axis] = geometry.length;
    setup.positions = lattice_fill<3>(Box3{lower, upper}, dp);
    setup.fixed.resize(setup.positions.size());

    Vec3 tip = Vec3::Constant(0.5 * geometry.width);
    tip[setup.axis] = geometry.length;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < setup.positions.size(); ++i)
    {
        setup.fixed[i] = setup.positions[i][setup.axis] < 0.0;
        const double d = (setup.positions[i] - tip).squaredNorm();
        if (d < best - 1e-12)
        {
            best = d;
            setup.tip_index = i;
        }
    }
    return setup;
}

PointArray<3> init_case_velocity(ColumnCase kind, const ColumnSetup &setup, const ColumnGeometry &geometry,
                                 const ColumnVelocity &velocity)
{
    PointArray<3> out(setup.positions.size(), Vec3::Zero());
    const Vec3 bend = velocity.bend_speed * Vec3(std::sqrt(3.0) / 2.0, 0.5, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        if (setup.fixed[i])
            continue;
        const Vec3 &x = setup.positions[i];
        if (kind == ColumnCase::Bend)
        {
            out[i] = bend;
            continue;
        }
        const double along = x[setup.axis];
        Vec3 omega = Vec3::Zero();
        omega[setup.axis] = velocity.twist_rate * std::sin(std::numbers::pi * along / (2.0 * geometry.length));
        Vec3 center = Vec3::Constant(0.5 * geometry.width);
        center[setup.axis] = along;
        out[i] = omega.cross(x - center);
    }
    return out;
}
} // namespace sphtrunc
