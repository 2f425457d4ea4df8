#include "sphtrunc/bench/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <sstream>

namespace sphtrunc::bench
{
namespace pt = boost::property_tree;

std::string_view to_string(CaseKind kind)
{
    switch (kind)
    {
    case CaseKind::ShearLayer:
        return "shear-layer";
    case CaseKind::Cavity:
        return "cavity";
    case CaseKind::SemicircleCavity:
        return "semicircle-cavity";
    case CaseKind::DoubleMachReflection:
        return "dmr";
    case CaseKind::Cylinder:
        return "cylinder";
    case CaseKind::BendingColumn:
        return "bending-column";
    case CaseKind::TwistingColumn:
        return "twisting-column";
    }
    return "unknown";
}

CaseKind parse_case_kind(std::string_view text)
{
    for (auto kind : {CaseKind::ShearLayer, CaseKind::Cavity, CaseKind::SemicircleCavity,
                      CaseKind::DoubleMachReflection, CaseKind::Cylinder, CaseKind::BendingColumn,
                      CaseKind::TwistingColumn})
        if (text == to_string(kind))
            return kind;
    throw ConfigError("unknown case kind '" + std::string(text) + "'");
}

std::string_view to_string(SolverSelection solver)
{
    switch (solver)
    {
    case SolverSelection::EulerHllc:
        return "euler-hllc";
    case SolverSelection::EulerWc:
        return "euler-wc";
    case SolverSelection::Tlsph:
        return "tlsph";
    }
    return "unknown";
}

SolverSelection parse_solver(std::string_view text)
{
    for (auto s : {SolverSelection::EulerHllc, SolverSelection::EulerWc, SolverSelection::Tlsph})
        if (text == to_string(s))
            return s;
    throw ConfigError("unknown solver '" + std::string(text) + "'");
}

double CaseConfig::resolved_h_ratio() const
{
    if (h_ratio > 0.0)
        return h_ratio;
    return fluid() ? 1.3 : 1.15;
}

void CaseConfig::validate() const
{
    if (!(dp > 0.0) || !std::isfinite(dp))
        throw ConfigError("case '" + name + "': dp must be positive");
    if (!(t_end > 0.0))
        throw ConfigError("case '" + name + "': t_end must be positive");
    if (workers < 1)
        throw ConfigError("case '" + name + "': workers must be at least 1");
    if (reynolds < 0.0)
        throw ConfigError("case '" + name + "': negative Reynolds number");
    if (!(u_max > 0.0))
        throw ConfigError("case '" + name + "': u_max must be positive");
    if (jitter < 0.0 || jitter >= 0.5)
        throw ConfigError("case '" + name + "': jitter must lie in [0, 0.5)");
    const bool solid_case = kind == CaseKind::BendingColumn || kind == CaseKind::TwistingColumn;
    if (solid_case != (solver == SolverSelection::Tlsph))
        throw ConfigError("case '" + name + "': solver '" + std::string(to_string(solver)) +
                          "' does not match case kind '" + std::string(to_string(kind)) + "'");
    if (kind == CaseKind::DoubleMachReflection && solver != SolverSelection::EulerHllc)
        throw ConfigError("case '" + name + "': the shock case needs the euler-hllc solver");
    if (solid_case)
    {
        material.validate();
        if (damping < 0.0)
            throw ConfigError("case '" + name + "': damping must be non-negative");
    }
    for (const auto &path : {reference_u, reference_v})
        if (!path.empty() && !std::filesystem::exists(path))
            throw ConfigError("case '" + name + "': reference file '" + path.string() + "' not found");
}

namespace
{
template <typename T>
T get(const pt::ptree &tree, const std::string &key, T fallback)
{
    // The defaulted ptree overload falls back silently on unparsable text; the plain one throws.
    if (!tree.get_child_optional(key))
        return fallback;
    try
    {
        return tree.get<T>(key);
    }
    catch (const pt::ptree_error &e)
    {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

bool get_bool(const pt::ptree &tree, const std::string &key, bool fallback)
{
    const auto text = tree.get_optional<std::string>(key);
    if (!text)
        return fallback;
    if (*text == "true" || *text == "on" || *text == "yes" || *text == "1")
        return true;
    if (*text == "false" || *text == "off" || *text == "no" || *text == "0")
        return false;
    throw ConfigError("bad boolean for '" + key + "': " + *text);
}

pt::ptree read_ini(const std::string &text)
{
    pt::ptree tree;
    std::istringstream in(text);
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return tree;
}

std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void read_relaxation(const pt::ptree &tree, RelaxationConfig &relax)
{
    relax.max_steps = get(tree, "relaxation.steps", relax.max_steps);
    relax.residual_tol = get(tree, "relaxation.tolerance", relax.residual_tol);
    relax.step_scale = get(tree, "relaxation.step_scale", relax.step_scale);
}
} // namespace

CaseConfig parse_case_config(const std::string &text, const std::filesystem::path &base_dir)
{
    const pt::ptree tree = read_ini(text);
    CaseConfig c;
    c.name = get<std::string>(tree, "case.name", c.name);
    c.kind = parse_case_kind(get<std::string>(tree, "case.kind", std::string(to_string(c.kind))));
    if (tree.get_optional<std::string>("case.resolution"))
    {
        const double resolution = get(tree, "case.resolution", 0.0);
        if (!(resolution > 0.0))
            throw ConfigError("resolution must be positive");
        c.dp = 1.0 / resolution;
    }
    c.dp = get(tree, "case.dp", c.dp);
    try
    {
        c.kernel = parse_kernel_family(get<std::string>(tree, "case.kernel", "sw"));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    c.correction = get_bool(tree, "case.correction", c.correction);
    const bool solid_case = c.kind == CaseKind::BendingColumn || c.kind == CaseKind::TwistingColumn;
    const std::string default_solver = solid_case ? "tlsph"
                                       : c.kind == CaseKind::DoubleMachReflection ? "euler-hllc"
                                                                                   : "euler-wc";
    c.solver = parse_solver(get<std::string>(tree, "case.solver", default_solver));
    c.t_end = get(tree, "case.t_end", c.t_end);
    c.max_steps = get<std::size_t>(tree, "case.max_steps", c.max_steps);
    c.seed = get<std::uint64_t>(tree, "case.seed", c.seed);
    c.workers = get(tree, "case.workers", c.workers);
    c.jitter = get(tree, "case.jitter", c.jitter);
    c.clamp_layers = get(tree, "case.clamp", c.clamp_layers);

    c.reynolds = get(tree, "physics.re", c.reynolds);
    c.u_max = get(tree, "physics.u_max", c.u_max);
    c.gamma = get(tree, "physics.gamma", c.gamma);
    c.cfl = get(tree, "physics.cfl", c.cfl);
    c.eta = get(tree, "physics.eta", c.eta);
    c.h_ratio = get(tree, "physics.h_ratio", c.h_ratio);
    c.init_velocity = get(tree, "physics.init_velocity", c.init_velocity);

    if (c.kind == CaseKind::TwistingColumn)
        c.material.poisson = 0.499;
    c.material.rho0 = get(tree, "material.rho0", c.material.rho0);
    c.material.youngs = get(tree, "material.E", get(tree, "material.youngs", c.material.youngs));
    c.material.poisson = get(tree, "material.nu", get(tree, "material.poisson", c.material.poisson));
    c.damping = get(tree, "material.damping", c.damping);

    if (const auto sides = tree.get_child_optional("boundaries"))
        for (const auto &[key, value] : *sides)
            c.boundaries[key] = value.data();
    read_relaxation(tree, c.relaxation);

    c.output_every = get<std::size_t>(tree, "output.every", c.output_every);
    c.vtk = get_bool(tree, "output.vtk", c.vtk);
    c.trajectory_every = get(tree, "output.trajectory_every", c.trajectory_every);

    const auto resolve = [&](const std::string &key) -> std::filesystem::path {
        const auto text = tree.get_optional<std::string>(key);
        if (!text || text->empty())
            return {};
        std::filesystem::path path(*text);
        return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    c.reference_u = resolve("reference.u");
    c.reference_v = resolve("reference.v");
    c.validate();
    return c;
}

CaseConfig load_case_config(const std::filesystem::path &path)
{
    return parse_case_config(read_file(path), path.parent_path());
}

StudyConfig parse_study_config(const std::string &text)
{
    const pt::ptree tree = read_ini(text);
    StudyConfig s;
    const auto distribution = get<std::string>(tree, "study.distribution", "all");
    if (distribution != "all")
    {
        try
        {
            s.distributions = {parse_distribution(distribution)};
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
    }
    if (const auto list = tree.get_optional<std::string>("study.divisions"))
    {
        s.divisions.clear();
        std::istringstream in(*list);
        std::string item;
        while (std::getline(in, item, ','))
        {
            try
            {
                const int d = std::stoi(item);
                if (d < 2)
                    throw ConfigError("study divisions must be at least 2");
                s.divisions.push_back(d);
            }
            catch (const std::logic_error &)
            {
                throw ConfigError("bad division entry '" + item + "'");
            }
        }
        if (s.divisions.empty())
            throw ConfigError("study needs at least one resolution");
    }
    s.settings.diameter = get(tree, "study.diameter", s.settings.diameter);
    s.settings.h_ratio = get(tree, "study.h_ratio", s.settings.h_ratio);
    if (!(s.settings.diameter > 0.0) || !(s.settings.h_ratio > 0.0))
        throw ConfigError("study diameter and h_ratio must be positive");
    read_relaxation(tree, s.settings.relaxation);
    return s;
}

StudyConfig load_study_config(const std::filesystem::path &path)
{
    return parse_study_config(read_file(path));
}
} // namespace sphtrunc::bench
