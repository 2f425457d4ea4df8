#include "sphtrunc/bench/cases.h"

#include "sphtrunc/bench/profiles.h"
#include "sphtrunc/geometry.h"
#include "sphtrunc/tlsph.h"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace sphtrunc::bench
{
namespace
{
using Clock = std::chrono::steady_clock;

constexpr double cylinder_diameter = 2.0;

struct DtStats
{
    double min = std::numeric_limits<double>::infinity();
    double max = 0.0;
    double sum = 0.0;
    double last = 0.0;
    std::size_t count = 0;

    void add(double dt)
    {
        min = std::min(min, dt);
        max = std::max(max, dt);
        sum += dt;
        last = dt;
        ++count;
    }

    DtSummary summary() const
    {
        if (count == 0)
            return {};
        return {min, max, sum / static_cast<double>(count), last};
    }
};

void log_line(const RunOptions &options, const std::string &line)
{
    if (options.log)
        options.log(line);
}

template <int Dim>
void apply_jitter(PointArray<Dim> &positions, const CaseConfig &c)
{
    if (c.jitter <= 0.0)
        return;
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> offset(-c.jitter * c.dp, c.jitter * c.dp);
    for (auto &x : positions)
        for (int k = 0; k < Dim; ++k)
            x[k] += offset(rng);
}

int ghost_layers(const Kernel &kernel, double dp)
{
    return static_cast<int>(std::ceil(kernel.cutoff() / dp - 1e-9));
}

std::string snapshot_name(std::size_t step)
{
    std::ostringstream s;
    s << "snapshot_" << std::setw(7) << std::setfill('0') << step;
    return s.str();
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = lo + (hi - lo) * k / (n - 1);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Fluid cases
// ---------------------------------------------------------------------------------------------

struct FluidSetup
{
    FluidConfig fluid;
    PointArray<2> positions;
    GhostSet<2> ghosts;
    std::optional<PeriodicBox<2>> periodic;
    std::vector<double> rho;
    PointArray<2> velocity;
    std::vector<double> p;
};

FluidConfig base_fluid_config(const CaseConfig &c)
{
    FluidConfig f;
    f.kernel = c.kernel;
    f.h_ratio = c.resolved_h_ratio();
    f.dp = c.dp;
    f.correction = c.correction;
    f.workers = c.workers;
    f.limiter_eta = c.eta;
    f.viscosity = case_viscosity(c);
    if (c.solver == SolverSelection::EulerHllc)
    {
        f.solver = RiemannSolverKind::Hllc;
        f.eos = EosParams::ideal_gas(c.gamma);
    }
    else
    {
        f.solver = RiemannSolverKind::Linearised;
        f.eos = EosParams::weakly_compressible(1.0, c.u_max);
    }
    if (c.cfl > 0.0)
        f.cfl = c.cfl;
    return f;
}

PrimitiveState<2> free_stream(const CaseConfig &c)
{
    PrimitiveState<2> s;
    s.rho = 1.0;
    s.v = Vec2(c.u_max, 0.0);
    s.p = 0.0;
    return s;
}

// [boundaries] entries: x_low, x_high, y_low, y_high. Values are the side tags of the fluid module
// plus "no-slip-wall" and "lid" (no-slip wall moving at (u_max, 0)).
void apply_side_overrides(RectangleDomain<2> &domain, const CaseConfig &c, const PrimitiveState<2> &inflow)
{
    static const std::map<std::string, int> index{{"x_low", 0}, {"x_high", 1}, {"y_low", 2}, {"y_high", 3}};
    for (const auto &[key, value] : c.boundaries)
    {
        const auto it = index.find(key);
        if (it == index.end())
            throw ConfigError("unknown boundary side '" + key + "' (expected x_low, x_high, y_low or y_high)");
        SideCondition<2> side;
        if (value == "lid")
        {
            side.kind = SideKind::Wall;
            side.no_slip = true;
            side.wall_velocity = Vec2(c.u_max, 0.0);
        }
        else
        {
            side.kind = parse_side_kind(value);
            side.no_slip = value == "no-slip-wall";
            side.fixed = side.kind == SideKind::DmrBottom || side.kind == SideKind::DmrTop ? dmr_post_shock() : inflow;
            side.ambient = dmr_pre_shock();
        }
        domain.sides[it->second] = side;
    }
}

FluidSetup shear_layer_setup(const CaseConfig &c)
{
    FluidSetup s;
    s.fluid = base_fluid_config(c);
    const Rectangle box{Vec2::Zero(), Vec2::Ones()};
    s.positions = lattice_fill<2>(box, c.dp);
    apply_jitter(s.positions, c);
    s.periodic = PeriodicBox<2>{box.lower, box.upper};
    if (!c.boundaries.empty())
        throw ConfigError("the shear layer is doubly periodic; remove the [boundaries] section");

    constexpr double layer = 1.0 / 30.0;
    constexpr double delta = 0.05;
    const std::size_t n = s.positions.size();
    s.rho.assign(n, 1.0);
    s.p.assign(n, 0.0);
    s.velocity.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double x = s.positions[i].x();
        const double y = s.positions[i].y();
        const double u = y <= 0.5 ? std::tanh((y - 0.25) / layer) : std::tanh((0.75 - y) / layer);
        s.velocity[i] = c.u_max * Vec2(u, delta * std::sin(2.0 * std::numbers::pi * x));
    }
    return s;
}

FluidSetup cavity_setup(const CaseConfig &c)
{
    FluidSetup s;
    s.fluid = base_fluid_config(c);
    RectangleDomain<2> domain;
    domain.lower = Vec2::Zero();
    domain.upper = Vec2::Ones();
    domain.dp = c.dp;
    for (auto &side : domain.sides)
    {
        side.kind = SideKind::Wall;
        side.no_slip = true;
    }
    domain.sides[3].wall_velocity = Vec2(c.u_max, 0.0);
    apply_side_overrides(domain, c, free_stream(c));

    const Kernel kernel(c.kernel, s.fluid.h_ratio * c.dp, 2);
    s.ghosts = build_rectangle_ghosts<2>(domain, ghost_layers(kernel, c.dp));
    s.positions = lattice_fill<2>(Rectangle{domain.lower, domain.upper}, c.dp);
    apply_jitter(s.positions, c);
    const std::size_t n = s.positions.size();
    s.rho.assign(n, 1.0);
    s.p.assign(n, 0.0);
    s.velocity.assign(n, Vec2::Zero());
    return s;
}

SemiCircle semicircle_shape()
{
    return SemiCircle{Vec2(0.5, 0.0), 0.5, Vec2(0.0, 1.0)};
}

FluidSetup semicircle_setup(const CaseConfig &c, const RunOptions &options)
{
    FluidSetup s;
    s.fluid = base_fluid_config(c);
    if (!c.boundaries.empty())
        throw ConfigError("the semicircle cavity has fixed walls; remove the [boundaries] section");
    const auto relaxed = relax_case(c);
    log_line(options, "relaxation: " + std::to_string(relaxed.steps) + " steps, residual " +
                          format_double(relaxed.residual_history.empty() ? 0.0 : relaxed.residual_history.back()));
    s.positions = relaxed.positions;

    const Kernel kernel(c.kernel, s.fluid.h_ratio * c.dp, 2);
    const double lid = c.u_max;
    s.ghosts = build_shape_ghosts(
        semicircle_shape(), s.positions, c.dp, ghost_layers(kernel, c.dp) * c.dp,
        [lid](const Vec2 &foot) { return foot.y() > -1e-9 ? Vec2(lid, 0.0) : Vec2::Zero(); });
    const std::size_t n = s.positions.size();
    s.rho.assign(n, 1.0);
    s.p.assign(n, 0.0);
    s.velocity.assign(n, Vec2::Zero());
    return s;
}

FluidSetup dmr_setup(const CaseConfig &c)
{
    FluidSetup s;
    s.fluid = base_fluid_config(c);
    RectangleDomain<2> domain;
    domain.lower = Vec2::Zero();
    domain.upper = Vec2(4.0, 1.0);
    domain.dp = c.dp;
    const auto post = dmr_post_shock();
    const auto pre = dmr_pre_shock();
    domain.sides[0].kind = SideKind::Inflow;
    domain.sides[0].fixed = post;
    domain.sides[1].kind = SideKind::ZeroGradient;
    domain.sides[2].kind = SideKind::DmrBottom;
    domain.sides[2].fixed = post;
    domain.sides[3].kind = SideKind::DmrTop;
    domain.sides[3].fixed = post;
    domain.sides[3].ambient = pre;
    apply_side_overrides(domain, c, post);

    const Kernel kernel(c.kernel, s.fluid.h_ratio * c.dp, 2);
    s.ghosts = build_rectangle_ghosts<2>(domain, ghost_layers(kernel, c.dp));
    s.positions = lattice_fill<2>(Rectangle{domain.lower, domain.upper}, c.dp);
    apply_jitter(s.positions, c);
    const std::size_t n = s.positions.size();
    s.rho.resize(n);
    s.p.resize(n);
    s.velocity.resize(n);
    const double split = domain.sides[2].split_x;
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto &x = s.positions[i];
        const auto &state = x.x() < dmr_shock_x(x.y(), 0.0, split) ? post : pre;
        s.rho[i] = state.rho;
        s.velocity[i] = state.v;
        s.p[i] = state.p;
    }
    return s;
}

FluidSetup cylinder_setup(const CaseConfig &c)
{
    FluidSetup s;
    s.fluid = base_fluid_config(c);
    constexpr double D = cylinder_diameter;
    RectangleDomain<2> domain;
    domain.lower = Vec2::Zero();
    domain.upper = Vec2(25.0 * D, 15.0 * D);
    domain.dp = c.dp;
    const auto inflow = free_stream(c);
    for (int k : {0, 2, 3})
    {
        domain.sides[k].kind = SideKind::Inflow;
        domain.sides[k].fixed = inflow;
    }
    domain.sides[1].kind = SideKind::ZeroGradient;
    apply_side_overrides(domain, c, inflow);

    const Kernel kernel(c.kernel, s.fluid.h_ratio * c.dp, 2);
    const int layers = ghost_layers(kernel, c.dp);
    // Rectangle ghosts address sources by lattice index, so the domain is filled completely and
    // the cylinder interior is masked out only after the rectangle ghosts are built.
    const Circle body{Vec2(7.5 * D, 7.5 * D), D};
    const auto lattice = lattice_fill<2>(Rectangle{domain.lower, domain.upper}, c.dp);
    s.ghosts = build_rectangle_ghosts<2>(domain, layers);
    PointArray<2> inside;
    for (const auto &x : lattice)
        (signed_distance(body, x) < 0.0 ? inside : s.positions).push_back(x);
    std::vector<Index> remap(lattice.size(), 0);
    for (std::size_t i = 0, k = 0; i < lattice.size(); ++i)
        if (signed_distance(body, lattice[i]) >= 0.0)
            remap[i] = static_cast<Index>(k++);
    for (auto &rule : s.ghosts.rules)
        if (rule.kind == GhostRule<2>::Kind::Mirror)
            rule.source = remap[rule.source];

    auto obstacle = build_obstacle_ghosts(body, inside, s.positions, layers * c.dp, 1);
    s.ghosts.positions.insert(s.ghosts.positions.end(), obstacle.positions.begin(), obstacle.positions.end());
    s.ghosts.rules.insert(s.ghosts.rules.end(), obstacle.rules.begin(), obstacle.rules.end());
    apply_jitter(s.positions, c);

    const std::size_t n = s.positions.size();
    s.rho.assign(n, inflow.rho);
    s.p.assign(n, inflow.p);
    s.velocity.assign(n, inflow.v);
    return s;
}

FluidSnapshot fluid_snapshot(const EulerianSolver<2> &solver, bool with_vorticity)
{
    FluidSnapshot snap;
    const std::size_t n = solver.real_count();
    const auto &f = solver.fields();
    snap.time = solver.time();
    snap.positions.assign(solver.positions().begin(), solver.positions().begin() + n);
    snap.rho.assign(f.rho.begin(), f.rho.begin() + n);
    snap.velocity.assign(f.v.begin(), f.v.begin() + n);
    snap.p.assign(f.p.begin(), f.p.begin() + n);
    if (solver.config().eos.kind == EosKind::IdealGas)
        snap.E.assign(f.E.begin(), f.E.begin() + n);
    if (with_vorticity)
        snap.vorticity = vorticity_field(solver);
    return snap;
}

void write_fluid_files(const std::filesystem::path &dir, const std::string &stem, const FluidSnapshot &snap,
                       bool vtk)
{
    write_fluid_csv(dir / (stem + ".csv"), snap);
    if (vtk)
        write_fluid_vtk(dir / (stem + ".vtk"), snap);
}

// Samples component `axis` of the velocity at the given points. Wall points (outside or on the
// boundary) are expected to be filtered by the caller.
ProfileResult sample_velocity(const EulerianSolver<2> &solver, const std::string &name, const PointArray<2> &points,
                              std::vector<double> coordinate, int axis)
{
    const auto &f = solver.fields();
    std::vector<double> component(f.v.size());
    for (std::size_t i = 0; i < component.size(); ++i)
        component[i] = f.v[i][axis];
    ProfileResult profile;
    profile.name = name;
    profile.coordinate = std::move(coordinate);
    profile.value = sph_interpolate(solver.kernel(), solver.positions(), f.vol, component, points);
    return profile;
}

// Line profile of one velocity component, either at the reference coordinates (minus points on
// or outside the walls) or at 41 evenly spaced interior points.
ProfileResult line_profile(const EulerianSolver<2> &solver, const std::string &name,
                           const std::filesystem::path &reference, double lo, double hi,
                           const std::function<Vec2(double)> &point, int axis, double dp)
{
    std::vector<double> coordinate;
    std::vector<double> expected;
    if (!reference.empty())
    {
        const auto table = load_reference_profile(reference);
        for (std::size_t k = 0; k < table.coordinate.size(); ++k)
        {
            const double s = table.coordinate[k];
            if (s > lo + 1e-9 && s < hi - 1e-9)
            {
                coordinate.push_back(s);
                expected.push_back(table.value[k]);
            }
        }
        if (coordinate.empty())
            throw ConfigError("reference '" + reference.string() + "' has no points inside the domain");
    }
    else
    {
        coordinate = linspace(lo + 0.5 * dp, hi - 0.5 * dp, 41);
    }
    PointArray<2> points;
    for (double s : coordinate)
        points.push_back(point(s));
    auto profile = sample_velocity(solver, name, points, coordinate, axis);
    profile.reference = std::move(expected);
    return profile;
}

void profile_metrics(const ProfileResult &profile, MetricMap &metrics)
{
    const std::string key = "profile_" + profile.name;
    if (profile.reference.empty())
    {
        metrics[key + "_linf"] = std::nullopt;
        metrics[key + "_l2"] = std::nullopt;
        return;
    }
    const auto m = compare_profiles(profile.value, profile.reference);
    metrics[key + "_linf"] = m.linf;
    metrics[key + "_l2"] = m.l2;
}

double relative_drift(double now, double start)
{
    return start != 0.0 ? std::abs(now - start) / std::abs(start) : std::abs(now - start);
}

ConservationAudit fluid_audit(const ConservationTotals &start, const ConservationTotals &end, bool energy)
{
    ConservationAudit audit;
    audit.mass_drift = relative_drift(end.mass, start.mass);
    double dp = 0.0;
    for (std::size_t k = 0; k < start.momentum.size(); ++k)
        dp += std::pow(end.momentum[k] - start.momentum[k], 2);
    dp = std::sqrt(dp);
    audit.momentum_drift = start.momentum_scale > 0.0 ? dp / start.momentum_scale : dp;
    if (energy)
        audit.energy_drift = relative_drift(end.energy, start.energy);
    return audit;
}

void fluid_metrics(const CaseConfig &c, const EulerianSolver<2> &solver, CaseResult &result)
{
    auto &metrics = result.report.metrics;
    const auto &snap = *result.fluid;
    double rho_min = std::numeric_limits<double>::infinity();
    double rho_max = 0.0;
    double vort_max = 0.0;
    double kinetic = 0.0;
    for (std::size_t i = 0; i < snap.rho.size(); ++i)
    {
        rho_min = std::min(rho_min, snap.rho[i]);
        rho_max = std::max(rho_max, snap.rho[i]);
        vort_max = std::max(vort_max, std::abs(snap.vorticity[i]));
        kinetic += 0.5 * snap.rho[i] * snap.velocity[i].squaredNorm() * std::pow(c.dp, 2);
    }
    metrics["rho_min"] = rho_min;
    metrics["rho_max"] = rho_max;
    metrics["vorticity_max"] = vort_max;
    metrics["kinetic_energy"] = kinetic;
    metrics["limiter_beta_max"] = solver.max_beta();
    metrics["limiter_violations"] = static_cast<double>(solver.limiter_violations());

    const auto point_on = [](double x) { return [x](double y) { return Vec2(x, y); }; };
    const auto point_across = [](double y) { return [y](double x) { return Vec2(x, y); }; };
    switch (c.kind)
    {
    case CaseKind::Cavity:
        result.profiles.push_back(line_profile(solver, "u", c.reference_u, 0.0, 1.0, point_on(0.5), 0, c.dp));
        result.profiles.push_back(line_profile(solver, "v", c.reference_v, 0.0, 1.0, point_across(0.5), 1, c.dp));
        break;
    case CaseKind::SemicircleCavity:
    {
        const double half_chord = std::sqrt(0.25 - 0.25 * 0.25);
        result.profiles.push_back(line_profile(solver, "u", c.reference_u, -0.5, 0.0, point_on(0.5), 0, c.dp));
        result.profiles.push_back(line_profile(solver, "v", c.reference_v, 0.5 - half_chord, 0.5 + half_chord,
                                               point_across(-0.25), 1, c.dp));
        break;
    }
    case CaseKind::DoubleMachReflection:
        metrics["rho_in_band"] = rho_min >= 1.3 && rho_max <= 25.0 ? 1.0 : 0.0;
        break;
    case CaseKind::Cylinder:
    {
        const auto coeffs = drag_lift(result.forces, 1.0, c.u_max, cylinder_diameter, cylinder_diameter, 0.5 * c.t_end);
        metrics["cd_mean"] = coeffs.mean_cd;
        metrics["strouhal"] = coeffs.strouhal;
        metrics["lift_peaks"] = static_cast<double>(coeffs.peaks);
        break;
    }
    default:
        break;
    }
    for (const auto &profile : result.profiles)
        profile_metrics(profile, metrics);
}

void write_profiles(const std::filesystem::path &dir, const CaseResult &result)
{
    for (const auto &p : result.profiles)
        write_profile_csv(dir / ("profile_" + p.name + ".csv"), p.coordinate, p.value, p.reference);
}

void write_forces(const std::filesystem::path &dir, const CaseConfig &c, const std::vector<ForceSample> &forces)
{
    if (forces.empty())
        return;
    std::ostringstream out;
    out.precision(17);
    out << "time,fx,fy,cd,cl\n";
    for (const auto &f : forces)
        out << f.time << ',' << f.force.x() << ',' << f.force.y() << ','
            << force_coefficient(f.force.x(), 1.0, c.u_max, cylinder_diameter) << ','
            << force_coefficient(f.force.y(), 1.0, c.u_max, cylinder_diameter) << '\n';
    write_text(dir / "forces.csv", out.str());
}

RunReport base_report(const CaseConfig &c)
{
    RunReport r;
    r.case_name = c.name;
    r.kind = std::string(to_string(c.kind));
    r.kernel = std::string(to_string(c.kernel));
    r.solver = std::string(to_string(c.solver));
    r.dp = c.dp;
    r.workers = c.workers;
    r.seed = c.seed;
    return r;
}

bool keep_running(double time, std::size_t steps, const CaseConfig &c)
{
    return time < c.t_end * (1.0 - 1e-12) && (c.max_steps == 0 || steps < c.max_steps);
}

CaseResult run_fluid(const CaseConfig &c, const RunOptions &options)
{
    FluidSetup setup;
    switch (c.kind)
    {
    case CaseKind::ShearLayer:
        setup = shear_layer_setup(c);
        break;
    case CaseKind::Cavity:
        setup = cavity_setup(c);
        break;
    case CaseKind::SemicircleCavity:
        setup = semicircle_setup(c, options);
        break;
    case CaseKind::DoubleMachReflection:
        setup = dmr_setup(c);
        break;
    case CaseKind::Cylinder:
        setup = cylinder_setup(c);
        break;
    default:
        throw ConfigError("case kind '" + std::string(to_string(c.kind)) + "' is not a fluid case");
    }

    EulerianSolver<2> solver(setup.fluid, std::move(setup.positions), std::move(setup.ghosts), setup.periodic);
    solver.set_state(setup.rho, setup.velocity, setup.p);

    CaseResult result;
    result.report = base_report(c);
    auto &report = result.report;
    report.particles = solver.real_count();
    report.ghosts = solver.ghost_count();
    report.pair_count = solver.neighbors().pair_count();
    report.mean_neighbors = static_cast<double>(report.pair_count) / static_cast<double>(solver.real_count());
    report.regularized = solver.corrections().regularized_count;
    log_line(options, c.name + " [" + report.kernel + "]: " + std::to_string(report.particles) + " particles, " +
                          std::to_string(report.ghosts) + " ghosts");

    const bool ideal_gas = setup.fluid.eos.kind == EosKind::IdealGas;
    const auto start = solver.totals();
    const bool write = !options.out_dir.empty();
    DtStats dts;
    double elapsed = 0.0;
    const bool track_force = c.kind == CaseKind::Cylinder;
    try
    {
        while (keep_running(solver.time(), solver.steps(), c))
        {
            const auto t0 = Clock::now();
            double dt = solver.compute_dt();
            if (solver.time() + dt > c.t_end)
                dt = c.t_end - solver.time();
            solver.step(dt);
            elapsed += std::chrono::duration<double>(Clock::now() - t0).count();
            dts.add(dt);
            if (track_force)
                result.forces.push_back({solver.time(), solver.body_force(1)});
            if (write && c.output_every > 0 && solver.steps() % c.output_every == 0)
                write_fluid_files(options.out_dir, snapshot_name(solver.steps()),
                                  fluid_snapshot(solver, c.vtk), c.vtk);
        }
    }
    catch (const SolverError &e)
    {
        report.status = "aborted";
        report.message = e.what();
        report.wall_clock = elapsed;
        report.steps = solver.steps();
        report.end_time = solver.time();
        report.dt = dts.summary();
        if (write)
        {
            write_fluid_csv(options.out_dir / "aborted.csv", fluid_snapshot(solver, false));
            write_text(options.out_dir / "report.json", report.to_json());
            write_forces(options.out_dir, c, result.forces);
        }
        throw;
    }

    report.wall_clock = elapsed;
    report.steps = solver.steps();
    report.end_time = solver.time();
    report.dt = dts.summary();
    report.conservation = fluid_audit(start, solver.totals(), ideal_gas);
    result.fluid = fluid_snapshot(solver, true);
    fluid_metrics(c, solver, result);
    log_line(options, c.name + " [" + report.kernel + "]: " + std::to_string(report.steps) + " steps in " +
                          format_double(report.wall_clock) + " s");

    if (write)
    {
        write_fluid_files(options.out_dir, "final", *result.fluid, c.vtk);
        write_profiles(options.out_dir, result);
        write_forces(options.out_dir, c, result.forces);
        write_text(options.out_dir / "report.json", report.to_json());
    }
    return result;
}

// ---------------------------------------------------------------------------------------------
// Solid cases
// ---------------------------------------------------------------------------------------------

SolidSnapshot solid_snapshot(const TotalLagrangianSolver<3> &solver)
{
    SolidSnapshot snap;
    snap.time = solver.time();
    snap.reference = solver.reference();
    snap.positions = solver.positions();
    snap.velocity = solver.velocities();
    snap.von_mises = solver.von_mises_field();
    return snap;
}

void write_solid_files(const std::filesystem::path &dir, const std::string &stem, const SolidSnapshot &snap,
                       bool vtk)
{
    write_solid_csv(dir / (stem + ".csv"), snap);
    if (vtk)
        write_solid_vtk(dir / (stem + ".vtk"), snap);
}

void write_trajectory(const std::filesystem::path &dir, const CaseConfig &c,
                      const std::vector<TrajectorySample> &trajectory)
{
    if (c.trajectory_every <= 0.0)
    {
        write_trajectory_csv(dir / "trajectory.csv", trajectory);
        return;
    }
    std::vector<TrajectorySample> thinned;
    double next = 0.0;
    for (const auto &s : trajectory)
        if (s.time >= next - 1e-12)
        {
            thinned.push_back(s);
            while (next <= s.time + 1e-12)
                next += c.trajectory_every;
        }
    write_trajectory_csv(dir / "trajectory.csv", thinned);
}

CaseResult run_solid(const CaseConfig &c, const RunOptions &options)
{
    const ColumnCase kind = c.kind == CaseKind::BendingColumn ? ColumnCase::Bend : ColumnCase::Twist;
    SolidConfig sc;
    sc.kernel = c.kernel;
    sc.h_ratio = c.resolved_h_ratio();
    sc.dp = c.dp;
    sc.correction = c.correction;
    sc.material = c.material;
    sc.workers = c.workers;
    sc.damping = c.damping;
    if (c.cfl > 0.0)
        sc.cfl = c.cfl;

    const Kernel kernel(c.kernel, sc.h_ratio * c.dp, 3);
    const int layers = c.clamp_layers >= 0 ? c.clamp_layers : ghost_layers(kernel, c.dp);
    ColumnSetup column = make_column(kind, c.dp, layers);
    apply_jitter(column.positions, c);
    ColumnVelocity initial;
    if (c.init_velocity >= 0.0)
        (kind == ColumnCase::Bend ? initial.bend_speed : initial.twist_rate) = c.init_velocity;
    const auto velocity = init_case_velocity(kind, column, {}, initial);

    TotalLagrangianSolver<3> solver(sc, column.positions, column.fixed);
    solver.set_velocity(velocity);

    CaseResult result;
    result.report = base_report(c);
    auto &report = result.report;
    report.particles = solver.size();
    report.pair_count = solver.neighbors().pair_count();
    report.mean_neighbors = static_cast<double>(report.pair_count) / static_cast<double>(solver.size());
    report.regularized = solver.corrections().regularized_count;
    std::size_t fixed_count = 0;
    for (bool f : column.fixed)
        fixed_count += f ? 1 : 0;
    report.ghosts = fixed_count;
    log_line(options, c.name + " [" + report.kernel + "]: " + std::to_string(report.particles) + " particles, " +
                          std::to_string(fixed_count) + " clamped");

    const std::size_t tip = column.tip_index;
    const double energy0 = solver.kinetic_energy() + solver.strain_energy();
    result.trajectory.push_back({0.0, solver.positions()[tip]});
    double vm_max = 0.0;
    double det_min = std::numeric_limits<double>::infinity();
    const auto track = [&] {
        for (double vm : solver.von_mises_field())
            vm_max = std::max(vm_max, vm);
        for (const auto &F : solver.deformation())
            det_min = std::min(det_min, F.determinant());
    };
    track();

    const bool write = !options.out_dir.empty();
    DtStats dts;
    double elapsed = 0.0;
    try
    {
        while (keep_running(solver.time(), solver.steps(), c))
        {
            const auto t0 = Clock::now();
            double dt = solver.compute_dt();
            if (solver.time() + dt > c.t_end)
                dt = c.t_end - solver.time();
            solver.step(dt);
            elapsed += std::chrono::duration<double>(Clock::now() - t0).count();
            dts.add(dt);
            result.trajectory.push_back({solver.time(), solver.positions()[tip]});
            track();
            if (write && c.output_every > 0 && solver.steps() % c.output_every == 0)
                write_solid_files(options.out_dir, snapshot_name(solver.steps()), solid_snapshot(solver), c.vtk);
        }
    }
    catch (const SolverError &e)
    {
        report.status = "aborted";
        report.message = e.what();
        report.wall_clock = elapsed;
        report.steps = solver.steps();
        report.end_time = solver.time();
        report.dt = dts.summary();
        report.metrics["von_mises_max"] = vm_max;
        if (write)
        {
            write_solid_csv(options.out_dir / "aborted.csv", solid_snapshot(solver));
            write_trajectory(options.out_dir, c, result.trajectory);
            write_text(options.out_dir / "report.json", report.to_json());
        }
        throw;
    }

    report.wall_clock = elapsed;
    report.steps = solver.steps();
    report.end_time = solver.time();
    report.dt = dts.summary();
    const double energy1 = solver.kinetic_energy() + solver.strain_energy();
    report.conservation.mass_drift = 0.0;
    report.conservation.energy_drift = relative_drift(energy1, energy0);
    result.solid = solid_snapshot(solver);

    auto &metrics = report.metrics;
    double vm_final = 0.0;
    for (double vm : result.solid->von_mises)
        vm_final = std::max(vm_final, vm);
    double z_min = std::numeric_limits<double>::infinity();
    double z_max = -z_min;
    double displacement = 0.0;
    const Vec3 tip0 = result.trajectory.front().tip;
    for (const auto &s : result.trajectory)
    {
        z_min = std::min(z_min, s.tip.z());
        z_max = std::max(z_max, s.tip.z());
        displacement = std::max(displacement, (s.tip - tip0).norm());
    }
    metrics["von_mises_max"] = vm_max;
    metrics["von_mises_max_final"] = vm_final;
    metrics["det_f_min"] = det_min;
    metrics["tip_z_final"] = result.trajectory.back().tip.z();
    metrics["tip_z_min"] = z_min;
    metrics["tip_z_max"] = z_max;
    metrics["tip_displacement_max"] = displacement;
    metrics["energy_ratio_final"] = energy0 > 0.0 ? std::optional<double>(energy1 / energy0) : std::nullopt;
    log_line(options, c.name + " [" + report.kernel + "]: " + std::to_string(report.steps) + " steps in " +
                          format_double(report.wall_clock) + " s");

    if (write)
    {
        write_solid_files(options.out_dir, "final", *result.solid, c.vtk);
        write_trajectory(options.out_dir, c, result.trajectory);
        write_text(options.out_dir / "report.json", report.to_json());
    }
    return result;
}
} // namespace

double case_viscosity(const CaseConfig &config)
{
    if (config.reynolds <= 0.0)
        return 0.0;
    const double length = config.kind == CaseKind::Cylinder ? cylinder_diameter : 1.0;
    return config.u_max * length / config.reynolds;
}

std::vector<double> vorticity_field(const EulerianSolver<2> &solver)
{
    const auto &neighbors = solver.neighbors();
    const auto &f = solver.fields();
    const auto &B = solver.corrections().B;
    std::vector<double> out(solver.real_count());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        Mat2 grad = Mat2::Zero();
        for (const auto &nb : neighbors.of(i))
            grad += (f.v[nb.j] - f.v[i]) * (B[i] * (solver.kernel().derivative(nb.r) * nb.e)).transpose() *
                    f.vol[nb.j];
        out[i] = grad(1, 0) - grad(0, 1);
    }
    return out;
}

RelaxationResult<2> relax_case(const CaseConfig &config)
{
    if (config.kind != CaseKind::SemicircleCavity)
        throw ConfigError("case kind '" + std::string(to_string(config.kind)) +
                          "' uses a lattice fill; only the semicircle cavity is relaxed");
    RelaxationConfig relax = config.relaxation;
    relax.shape = semicircle_shape();
    relax.dp = config.dp;
    return relax_shape<2>(relax);
}

CaseResult run_case(const CaseConfig &config, const RunOptions &options)
{
    config.validate();
    if (!options.out_dir.empty())
        std::filesystem::create_directories(options.out_dir);
    return config.fluid() ? run_fluid(config, options) : run_solid(config, options);
}
} // namespace sphtrunc::bench
