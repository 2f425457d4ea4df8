#include "sphtrunc/bench/profiles.h"

#include "sphtrunc/neighbor.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sphtrunc::bench
{
ReferenceProfile load_reference_profile(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("reference profile '" + path.string() + "' not found");
    ReferenceProfile profile;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        if (line.front() == '#')
        {
            profile.header.push_back(line);
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double a = 0.0;
        double b = 0.0;
        if (!(fields >> a >> b))
        {
            if (row == 0 && profile.coordinate.empty())
            {
                ++row;
                continue;
            }
            throw ConfigError("malformed row '" + line + "' in '" + path.string() + "'");
        }
        profile.coordinate.push_back(a);
        profile.value.push_back(b);
        ++row;
    }
    if (profile.coordinate.empty())
        throw ConfigError("reference profile '" + path.string() + "' has no data rows");
    return profile;
}

std::vector<double> sph_interpolate(const Kernel &kernel, const PointArray<2> &positions,
                                    std::span<const double> volumes, std::span<const double> field,
                                    const PointArray<2> &samples)
{
    if (volumes.size() != positions.size() || field.size() != positions.size())
        throw InputError("interpolation arrays differ in length");
    PointArray<2> all = samples;
    all.insert(all.end(), positions.begin(), positions.end());
    const auto neighbors = build_neighbors<2>(all, kernel.cutoff(), std::nullopt, samples.size());
    const std::size_t offset = samples.size();

    std::vector<double> out(samples.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t s = 0; s < samples.size(); ++s)
    {
        double weight = 0.0;
        double sum = 0.0;
        for (const auto &nb : neighbors.of(s))
        {
            if (nb.j < offset)
                continue;
            const std::size_t j = nb.j - offset;
            const double w = kernel.value(nb.r) * volumes[j];
            weight += w;
            sum += w * field[j];
        }
        // neighbor lists skip r = 0, so a particle sitting on the sample point is added here
        for (std::size_t j = 0; j < positions.size(); ++j)
            if (positions[j] == samples[s])
            {
                const double w = kernel.value(0.0) * volumes[j];
                weight += w;
                sum += w * field[j];
            }
        if (weight > 0.0)
            out[s] = sum / weight;
    }
    return out;
}

ProfileMetrics compare_profiles(std::span<const double> values, std::span<const double> reference)
{
    if (values.size() != reference.size())
        throw InputError("profile lengths differ");
    if (values.empty())
        throw InputError("empty profile");
    ProfileMetrics m;
    double sq = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        const double d = std::abs(values[i] - reference[i]);
        sq += d * d;
        m.linf = std::max(m.linf, d);
    }
    m.points = values.size();
    m.l2 = std::sqrt(sq / static_cast<double>(values.size()));
    return m;
}

double interpolate_linear(std::span<const double> x, std::span<const double> y, double xq)
{
    if (x.empty() || x.size() != y.size())
        throw InputError("interpolation table is empty or ragged");
    if (xq <= x.front())
        return y.front();
    if (xq >= x.back())
        return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t k = static_cast<std::size_t>(it - x.begin());
    const double t = (xq - x[k - 1]) / (x[k] - x[k - 1]);
    return (1.0 - t) * y[k - 1] + t * y[k];
}
} // namespace sphtrunc::bench
