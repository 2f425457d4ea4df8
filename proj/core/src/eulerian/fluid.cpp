#include "sphtrunc/eulerian/fluid.h"

#include "sphtrunc/parallel.h"

#include <cmath>
#include <sstream>

namespace sphtrunc
{
double FluidConfig::eta() const
{
    if (limiter_eta >= 0.0)
        return limiter_eta;
    return solver == RiemannSolverKind::Hllc ? 1.0 : 15.0;
}

void FluidConfig::validate() const
{
    if (!(dp > 0.0) || !(h_ratio > 0.0))
        throw ConfigError("fluid dp and h_ratio must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw ConfigError("fluid cfl must lie in (0, 1]");
    if (viscosity < 0.0)
        throw ConfigError("viscosity must be non-negative");
    if (solver == RiemannSolverKind::Hllc && eos.kind != EosKind::IdealGas)
        throw ConfigError("the HLLC solver requires the ideal-gas equation of state");
    if (solver == RiemannSolverKind::Linearised && eos.kind != EosKind::WeaklyCompressible)
        throw ConfigError("the linearised solver requires the weakly compressible equation of state");
    eos.validate();
}

template <int Dim>
void FluidRates<Dim>::assign(std::size_t n)
{
    rho.assign(n, 0.0);
    mom.assign(n, Vec<Dim>::Zero());
    E.assign(n, 0.0);
}

template <int Dim>
EulerianSolver<Dim>::EulerianSolver(const FluidConfig &config, PointArray<Dim> positions, GhostSet<Dim> ghosts,
                                    std::optional<PeriodicBox<Dim>> periodic)
    : config_(config), kernel_(config.kernel, config.h_ratio * config.dp, Dim), n_real_(positions.size()),
      positions_(std::move(positions)), ghosts_(std::move(ghosts)), periodic_(std::move(periodic))
{
    config_.validate();
    if (n_real_ == 0)
        throw InputError("fluid solver needs at least one particle");
    positions_.insert(positions_.end(), ghosts_.positions.begin(), ghosts_.positions.end());
    const std::size_t total = positions_.size();

    fields_.resize(total);
    const double volume = std::pow(config_.dp, Dim);
    std::fill(fields_.vol.begin(), fields_.vol.end(), volume);

    neighbors_ = build_neighbors<Dim>(positions_, kernel_.cutoff(), periodic_, n_real_);
    if (config_.correction)
        corrections_ = compute_corrections<Dim>(neighbors_, kernel_, fields_.vol);
    else
        corrections_.B.assign(n_real_, Mat<Dim>::Identity());

    const bool one_sided = config_.workers > 1;
    pair_offsets_.assign(n_real_ + 1, 0);
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        for (const auto &nb : neighbors_.of(i))
        {
            const bool ghost = nb.j >= n_real_;
            if (!one_sided && !ghost && nb.j < i)
                continue;
            const Vec<Dim> grad_w = kernel_.derivative(nb.r) * nb.e;
            const Mat<Dim> &Bj = ghost ? corrections_.B[i] : corrections_.B[nb.j];
            Pair pair;
            pair.i = static_cast<Index>(i);
            pair.j = nb.j;
            pair.ghost = one_sided || ghost;
            pair.grad = corrected_gradient<Dim>(corrections_.B[i], Bj, grad_w);
            pair.axis = -nb.e;
            pair.r = nb.r;
            pair.dW = kernel_.derivative(nb.r);
            pairs_.push_back(pair);
        }
        pair_offsets_[i + 1] = pairs_.size();
    }

    rho_.assign(n_real_, 1.0);
    mom_.assign(n_real_, Vec<Dim>::Zero());
    energy_.assign(n_real_, 0.0);
}

template <int Dim>
void EulerianSolver<Dim>::set_state(std::span<const double> rho, const PointArray<Dim> &velocity,
                                    std::span<const double> pressure)
{
    if (rho.size() != n_real_ || velocity.size() != n_real_ || pressure.size() != n_real_)
        throw InputError("state arrays must match the real particle count");
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        if (!(rho[i] > 0.0))
            throw InputError("initial density must be positive");
        rho_[i] = rho[i];
        mom_[i] = rho[i] * velocity[i];
        energy_[i] = total_energy_density(rho[i], pressure[i], velocity[i].squaredNorm(), config_.eos);
    }
    refresh_derived();
    apply_ghosts(time_);
}

template <int Dim>
void EulerianSolver<Dim>::refresh_derived()
{
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        const double rho = rho_[i];
        if (!(rho > 0.0) || !std::isfinite(rho))
        {
            std::ostringstream msg;
            msg << "invalid density " << rho << " at particle " << i << " (x = " << positions_[i].transpose()
                << ") at t = " << time_;
            throw SolverError(msg.str());
        }
        const Vec<Dim> v = mom_[i] / rho;
        const double kinetic = 0.5 * rho * v.squaredNorm();
        fields_.rho[i] = rho;
        fields_.v[i] = v;
        if (config_.eos.kind == EosKind::WeaklyCompressible)
            energy_[i] = kinetic;
        fields_.E[i] = energy_[i];
        PressureSound ps{};
        try
        {
            ps = eos_eval(rho, kinetic, energy_[i], config_.eos);
        }
        catch (const SolverError &e)
        {
            std::ostringstream msg;
            msg << e.what() << " at particle " << i << " (x = " << positions_[i].transpose() << ", rho = " << rho
                << ") at t = " << time_;
            throw SolverError(msg.str());
        }
        fields_.p[i] = ps.p;
        fields_.c[i] = ps.c;
    }
}

template <int Dim>
void EulerianSolver<Dim>::apply_ghosts(double t)
{
    apply_boundaries<Dim>(fields_, n_real_, ghosts_, t, config_.eos);
}

template <int Dim>
void EulerianSolver<Dim>::pair_flux(const Pair &pair, double &mass, Vec<Dim> &mom, double &energy)
{
    const std::size_t i = pair.i, j = pair.j;
    const auto &f = fields_;
    const Vec<Dim> &n = pair.axis;
    const double ul = f.v[i].dot(n);
    const double ur = f.v[j].dot(n);
    const InterfaceState left{f.rho[i], ul, f.p[i], f.c[i], f.E[i]};
    const InterfaceState right{f.rho[j], ur, f.p[j], f.c[j], f.E[j]};

    double rho_f, p_f, E_f = 0.0;
    Vec<Dim> v_f;
    RiemannStar star;
    if (config_.solver == RiemannSolverKind::Hllc)
    {
        try
        {
            star = hllc_star(left, right, config_.eta());
        }
        catch (const SolverError &e)
        {
            std::ostringstream msg;
            msg << e.what() << " between particles " << i << " (x = " << positions_[i].transpose() << ") and " << j
                << " at t = " << time_;
            throw SolverError(msg.str());
        }
        switch (star.region)
        {
        case StarRegion::Left:
            rho_f = f.rho[i];
            v_f = f.v[i];
            p_f = f.p[i];
            E_f = f.E[i];
            break;
        case StarRegion::Right:
            rho_f = f.rho[j];
            v_f = f.v[j];
            p_f = f.p[j];
            E_f = f.E[j];
            break;
        case StarRegion::LeftStar:
            rho_f = star.rho_star_l;
            v_f = star_velocity<Dim>(f.v[i], f.v[j], n, ul, ur, star.u_star);
            p_f = star.p_star;
            E_f = star.E_star_l;
            break;
        case StarRegion::RightStar:
        default:
            rho_f = star.rho_star_r;
            v_f = star_velocity<Dim>(f.v[i], f.v[j], n, ul, ur, star.u_star);
            p_f = star.p_star;
            E_f = star.E_star_r;
            break;
        }
    }
    else
    {
        star = linearized_star(left, right, config_.eta());
        p_f = star.p_star;
        rho_f = density_from_pressure(p_f, config_.eos);
        v_f = star_velocity<Dim>(f.v[i], f.v[j], n, ul, ur, star.u_star);
    }
    if (star.beta > max_beta_)
        max_beta_ = star.beta;
    if (star.beta < 0.0 || star.beta > 1.0)
        ++limiter_violations_;

    const double vn = v_f.dot(pair.grad);
    mass = rho_f * vn;
    mom = rho_f * vn * v_f + p_f * pair.grad;
    energy = (E_f + p_f) * vn;
    if (!std::isfinite(mass) || !mom.allFinite() || !std::isfinite(energy))
    {
        std::ostringstream msg;
        msg << "non-finite flux between particles " << i << " and " << j << " at t = " << time_ << " (rho "
            << f.rho[i] << "/" << f.rho[j] << ", p " << f.p[i] << "/" << f.p[j] << ")";
        throw SolverError(msg.str());
    }
}

template <int Dim>
void EulerianSolver<Dim>::rhs(FluidRates<Dim> &rates)
{
    rates.assign(n_real_);
    forces_.clear();
    const bool compressible = config_.eos.kind == EosKind::IdealGas;
    const double mu = config_.viscosity;
    const auto &vol = fields_.vol;

    const auto accumulate = [&](const Pair &pair, bool update_j, Vec<Dim> *force) {
        double mass, energy;
        Vec<Dim> mom;
        pair_flux(pair, mass, mom, energy);
        const std::size_t i = pair.i, j = pair.j;
        Vec<Dim> visc = Vec<Dim>::Zero();
        if (mu > 0.0)
            visc = (2.0 * mu * pair.dW / pair.r) * (fields_.v[i] - fields_.v[j]);
        rates.rho[i] -= 2.0 * vol[j] * mass;
        rates.mom[i] += -2.0 * vol[j] * mom + vol[j] * visc;
        if (compressible)
            rates.E[i] -= 2.0 * vol[j] * energy;
        if (update_j)
        {
            rates.rho[j] += 2.0 * vol[i] * mass;
            rates.mom[j] += 2.0 * vol[i] * mom - vol[i] * visc;
            if (compressible)
                rates.E[j] += 2.0 * vol[i] * energy;
        }
        if (force)
            *force += vol[i] * vol[j] * (2.0 * mom - visc);
    };

    if (config_.workers <= 1)
    {
        for (const auto &pair : pairs_)
        {
            Vec<Dim> *force = nullptr;
            if (pair.ghost)
            {
                const int tag = ghosts_.rules[pair.j - n_real_].tag;
                if (tag != 0)
                    force = &forces_.try_emplace(tag, Vec<Dim>::Zero()).first->second;
            }
            accumulate(pair, !pair.ghost, force);
        }
    }
    else
    {
        // Each particle sums its own one-sided pairs; no shared writes.
        parallel_for(n_real_, config_.workers, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t k = pair_offsets_[i]; k < pair_offsets_[i + 1]; ++k)
                    accumulate(pairs_[k], false, nullptr);
        });
        for (const auto &pair : pairs_)
        {
            if (pair.j < n_real_)
                continue;
            const int tag = ghosts_.rules[pair.j - n_real_].tag;
            if (tag == 0)
                continue;
            double mass, energy;
            Vec<Dim> mom;
            pair_flux(pair, mass, mom, energy);
            Vec<Dim> visc = Vec<Dim>::Zero();
            if (mu > 0.0)
                visc = (2.0 * mu * pair.dW / pair.r) * (fields_.v[pair.i] - fields_.v[pair.j]);
            auto &force = forces_.try_emplace(tag, Vec<Dim>::Zero()).first->second;
            force += vol[pair.i] * vol[pair.j] * (2.0 * mom - visc);
        }
    }
}

template <int Dim>
double EulerianSolver<Dim>::compute_dt() const
{
    double max_speed = 0.0;
    for (std::size_t i = 0; i < n_real_; ++i)
        max_speed = std::max(max_speed, fields_.c[i] + fields_.v[i].norm());
    if (!(max_speed > 0.0))
        throw ConfigError("zero maximum wave speed; time step undefined");
    return config_.cfl * kernel_.h() / max_speed;
}

template <int Dim>
void EulerianSolver<Dim>::step(double dt)
{
    const std::vector<double> rho0 = rho_;
    const PointArray<Dim> mom0 = mom_;
    const std::vector<double> energy0 = energy_;
    const bool compressible = config_.eos.kind == EosKind::IdealGas;
    const double t0 = time_;

    FluidRates<Dim> rates;
    apply_ghosts(t0);
    rhs(rates);
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        rho_[i] = rho0[i] + 0.5 * dt * rates.rho[i];
        mom_[i] = mom0[i] + 0.5 * dt * rates.mom[i];
        if (compressible)
            energy_[i] = energy0[i] + 0.5 * dt * rates.E[i];
    }
    time_ = t0 + 0.5 * dt;
    refresh_derived();
    apply_ghosts(time_);
    rhs(rates);
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        rho_[i] = rho0[i] + dt * rates.rho[i];
        mom_[i] = mom0[i] + dt * rates.mom[i];
        if (compressible)
            energy_[i] = energy0[i] + dt * rates.E[i];
    }
    time_ = t0 + dt;
    refresh_derived();
    check_state();
    apply_ghosts(time_);
    ++steps_;
}

template <int Dim>
std::size_t EulerianSolver<Dim>::advance_to(double t_end, const std::function<void(const EulerianSolver &)> &observer)
{
    std::size_t taken = 0;
    while (time_ < t_end * (1.0 - 1e-12))
    {
        const double dt = std::min(compute_dt(), t_end - time_);
        step(dt);
        ++taken;
        if (observer)
            observer(*this);
    }
    return taken;
}

template <int Dim>
ConservationTotals EulerianSolver<Dim>::totals() const
{
    ConservationTotals t;
    Vec<Dim> momentum = Vec<Dim>::Zero();
    for (std::size_t i = 0; i < n_real_; ++i)
    {
        const double vol = fields_.vol[i];
        t.mass += vol * rho_[i];
        momentum += vol * mom_[i];
        t.energy += vol * energy_[i];
        t.momentum_scale += vol * mom_[i].norm();
    }
    t.momentum.assign(momentum.data(), momentum.data() + Dim);
    return t;
}

template <int Dim>
Vec<Dim> EulerianSolver<Dim>::body_force(int tag) const
{
    const auto it = forces_.find(tag);
    return it == forces_.end() ? Vec<Dim>::Zero() : it->second;
}

template <int Dim>
void EulerianSolver<Dim>::check_state() const
{
    for (std::size_t i = 0; i < n_real_; ++i)
        if (!(fields_.rho[i] > 0.0) || !fields_.v[i].allFinite())
            throw SolverError("fluid state invariant violated at particle " + std::to_string(i));
}

template struct FluidRates<2>;
template class EulerianSolver<2>;
} // namespace sphtrunc
