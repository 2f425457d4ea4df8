#include "sphtrunc/bench/runner.h"

#include "sphtrunc/bench/profiles.h"

#include <cmath>
#include <map>
#include <tuple>

namespace sphtrunc::bench
{
double relative_l2(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw InputError("relative L2 needs equally long arrays");
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        norm += a[i] * a[i];
    }
    if (norm == 0.0)
        throw DomainError("relative L2 against a zero reference");
    return std::sqrt(diff / norm);
}

double trajectory_linf_difference(std::span<const TrajectorySample> a, std::span<const TrajectorySample> b)
{
    if (a.empty() || b.empty())
        throw InputError("empty trajectory");
    std::vector<double> tb;
    std::vector<double> zb;
    for (const auto &s : b)
    {
        tb.push_back(s.time);
        zb.push_back(s.tip.z());
    }
    double out = 0.0;
    for (const auto &s : a)
        out = std::max(out, std::abs(s.tip.z() - interpolate_linear(tb, zb, s.time)));
    return out;
}

namespace
{
std::optional<double> safe_relative_l2(const std::vector<double> &a, const std::vector<double> &b)
{
    if (a.empty() || a.size() != b.size())
        return std::nullopt;
    try
    {
        return relative_l2(a, b);
    }
    catch (const DomainError &)
    {
        return std::nullopt;
    }
}

void flatten(const auto &vectors, std::vector<double> &out)
{
    for (const auto &v : vectors)
        for (int k = 0; k < v.size(); ++k)
            out.push_back(v[k]);
}

void compare_fluids(const FluidSnapshot &a, const FluidSnapshot &b, MetricMap &m)
{
    const bool same = a.positions.size() == b.positions.size();
    std::vector<double> va;
    std::vector<double> vb;
    if (same)
    {
        flatten(a.velocity, va);
        flatten(b.velocity, vb);
    }
    m["velocity_l2"] = same ? safe_relative_l2(va, vb) : std::nullopt;
    m["density_l2"] = same ? safe_relative_l2(a.rho, b.rho) : std::nullopt;
    m["vorticity_l2"] = same ? safe_relative_l2(a.vorticity, b.vorticity) : std::nullopt;
}

// Legs may clamp a different number of layers, so particles are paired by reference position.
void compare_solids(const SolidSnapshot &a, const SolidSnapshot &b, double dp, MetricMap &m)
{
    const auto key = [dp](const Vec3 &x) {
        return std::make_tuple(std::lround(x.x() / dp * 4.0), std::lround(x.y() / dp * 4.0),
                               std::lround(x.z() / dp * 4.0));
    };
    std::map<std::tuple<long, long, long>, std::size_t> index;
    for (std::size_t j = 0; j < b.reference.size(); ++j)
        index.emplace(key(b.reference[j]), j);

    std::vector<double> ua, ub, va, vb, sa, sb;
    for (std::size_t i = 0; i < a.reference.size(); ++i)
    {
        const auto it = index.find(key(a.reference[i]));
        if (it == index.end())
            continue;
        const std::size_t j = it->second;
        for (int k = 0; k < 3; ++k)
        {
            ua.push_back(a.positions[i][k] - a.reference[i][k]);
            ub.push_back(b.positions[j][k] - b.reference[j][k]);
            va.push_back(a.velocity[i][k]);
            vb.push_back(b.velocity[j][k]);
        }
        sa.push_back(a.von_mises[i]);
        sb.push_back(b.von_mises[j]);
    }
    m["matched_particles"] = static_cast<double>(sa.size());
    m["displacement_l2"] = safe_relative_l2(ua, ub);
    m["velocity_l2"] = safe_relative_l2(va, vb);
    m["von_mises_l2"] = safe_relative_l2(sa, sb);
}
} // namespace

MetricMap compare_legs(const CaseResult &sw, const CaseResult &tw)
{
    MetricMap m;
    if (sw.fluid && tw.fluid)
        compare_fluids(*sw.fluid, *tw.fluid, m);
    if (sw.solid && tw.solid)
        compare_solids(*sw.solid, *tw.solid, sw.report.dp, m);
    if (!sw.trajectory.empty() && !tw.trajectory.empty())
    {
        const double diff = trajectory_linf_difference(sw.trajectory, tw.trajectory);
        double z_scale = 0.0;
        double d_scale = 0.0;
        const double z0 = sw.trajectory.front().tip.z();
        for (const auto &s : sw.trajectory)
        {
            z_scale = std::max(z_scale, std::abs(s.tip.z()));
            d_scale = std::max(d_scale, std::abs(s.tip.z() - z0));
        }
        m["tip_z_linf"] = diff;
        m["tip_z_linf_rel"] = z_scale > 0.0 ? std::optional<double>(diff / z_scale) : std::nullopt;
        m["tip_dz_linf_rel"] = d_scale > 0.0 ? std::optional<double>(diff / d_scale) : std::nullopt;
    }
    for (const auto &pa : sw.profiles)
        for (const auto &pb : tw.profiles)
            if (pa.name == pb.name && pa.value.size() == pb.value.size() && !pa.value.empty())
                m["profile_" + pa.name + "_linf_diff"] = compare_profiles(pa.value, pb.value).linf;
    return m;
}

PairResult paired_run(const CaseConfig &config, const RunOptions &options)
{
    PairResult pair;
    const auto leg = [&](KernelFamily family, const char *name) {
        CaseConfig c = config;
        c.kernel = family;
        RunOptions o = options;
        if (!options.out_dir.empty())
            o.out_dir = options.out_dir / name;
        return run_case(c, o);
    };
    pair.sw = leg(KernelFamily::WendlandStandard, "sw");
    pair.tw = leg(KernelFamily::WendlandTruncated, "tw");
    pair.report.sw = pair.sw.report;
    pair.report.tw = pair.tw.report;
    pair.report.alpha = alpha_ratio(pair.tw.report.wall_clock, pair.sw.report.wall_clock);
    pair.report.differences = compare_legs(pair.sw, pair.tw);
    if (!options.out_dir.empty())
        write_text(options.out_dir / "pair.json", pair.report.to_json());
    return pair;
}
} // namespace sphtrunc::bench
