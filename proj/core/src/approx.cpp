#include "sphtrunc/approx.h"

#include "sphtrunc/geometry.h"

#include <cmath>
#include <limits>

namespace sphtrunc
{
template <int Dim>
double sph_unity_sum(std::size_t i, const NeighborList<Dim> &neighbors, const Kernel &kernel,
                     std::span<const double> volumes)
{
    double sum = kernel.value(0.0) * volumes[i];
    for (const auto &nb : neighbors.of(i))
        sum += kernel.value(nb.r) * volumes[nb.j];
    return sum;
}

template <int Dim>
Vec<Dim> weak_gradient(std::size_t i, std::span<const double> field, const NeighborList<Dim> &neighbors,
                       const Kernel &kernel, std::span<const double> volumes, const CorrectionField<Dim> *correction)
{
    Vec<Dim> grad = Vec<Dim>::Zero();
    for (const auto &nb : neighbors.of(i))
    {
        Vec<Dim> gw = kernel.derivative(nb.r) * nb.e;
        if (correction)
            gw = corrected_gradient<Dim>(correction->B[i], correction->B[nb.j], gw);
        grad += (field[i] + field[nb.j]) * volumes[nb.j] * gw;
    }
    return grad;
}

double l2_error(std::span<const double> numerical, std::span<const double> analytical)
{
    if (numerical.size() != analytical.size())
        throw InputError("l2_error: length mismatch");
    double diff = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < numerical.size(); ++k)
    {
        diff += (numerical[k] - analytical[k]) * (numerical[k] - analytical[k]);
        ref += analytical[k] * analytical[k];
    }
    if (!(ref > 0.0))
        throw DomainError("l2_error: reference has zero norm");
    return std::sqrt(diff / ref);
}

double exp_test_function(double x)
{
    return std::exp(-x * x / 0.1);
}

double exp_test_derivative(double x)
{
    return -2.0 * x / 0.1 * std::exp(-x * x / 0.1);
}

std::string_view to_string(Distribution distribution)
{
    switch (distribution)
    {
    case Distribution::Lattice:
        return "lattice";
    case Distribution::RelaxedWendland:
        return "relaxed-wendland";
    case Distribution::RelaxedLaguerreGauss:
        return "relaxed-laguerre-gauss";
    }
    return "unknown";
}

Distribution parse_distribution(std::string_view text)
{
    if (text == "lattice")
        return Distribution::Lattice;
    if (text == "relaxed-wendland" || text == "wendland")
        return Distribution::RelaxedWendland;
    if (text == "relaxed-laguerre-gauss" || text == "laguerre-gauss")
        return Distribution::RelaxedLaguerreGauss;
    throw ConfigError("unknown distribution '" + std::string(text) + "'");
}

StudyDistribution make_study_distribution(Distribution kind, int divisions, const StudySettings &settings)
{
    if (divisions < 1)
        throw InputError("study resolution must be at least one division");
    StudyDistribution out;
    out.kind = kind;
    out.divisions = divisions;
    out.dp = settings.diameter / divisions;
    const Shape circle = Circle{Vec2::Zero(), settings.diameter};
    if (kind == Distribution::Lattice)
    {
        out.positions = lattice_fill<2>(circle, out.dp);
        return out;
    }
    RelaxationConfig config = settings.relaxation;
    config.shape = circle;
    config.dp = out.dp;
    config.h_ratio = settings.h_ratio;
    config.kernel =
        kind == Distribution::RelaxedWendland ? KernelFamily::WendlandStandard : KernelFamily::LaguerreGauss;
    auto relaxed = relax_shape<2>(config);
    out.positions = std::move(relaxed.positions);
    out.residual_history = std::move(relaxed.residual_history);
    return out;
}

StudyErrors evaluate_study(const StudyDistribution &distribution, KernelFamily family, bool correction,
                           const StudySettings &settings)
{
    const double h = settings.h_ratio * distribution.dp;
    const Kernel kernel(family, h, 2);
    const auto &x = distribution.positions;
    const std::vector<double> volumes(x.size(), distribution.dp * distribution.dp);
    const auto neighbors = build_neighbors<2>(x, kernel.cutoff());

    CorrectionField<2> field;
    if (correction)
        field = compute_corrections<2>(neighbors, kernel, volumes, settings.correction);

    std::vector<double> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        f[i] = exp_test_function(x[i].x());

    const double radius = 0.5 * settings.diameter;
    std::vector<double> numerical, analytical;
    double unity_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (x[i].norm() + 2.0 * h > radius)
            continue;
        const Vec2 g = weak_gradient<2>(i, f, neighbors, kernel, volumes, correction ? &field : nullptr);
        numerical.push_back(g.x());
        analytical.push_back(exp_test_derivative(x[i].x()));
        const double s = sph_unity_sum<2>(i, neighbors, kernel, volumes) - 1.0;
        unity_sq += s * s;
    }
    if (numerical.empty())
        throw InputError("no particle has its full support inside the circle at this resolution");

    StudyErrors errors;
    errors.gradient_l2 = l2_error(numerical, analytical);
    errors.unity_l2 = std::sqrt(unity_sq / static_cast<double>(numerical.size()));
    errors.evaluated = numerical.size();
    errors.regularized = field.regularized_count;
    return errors;
}

namespace
{
void fill_orders(std::vector<StudyRow> &rows)
{
    for (std::size_t k = 0; k < rows.size(); ++k)
    {
        rows[k].observed_order = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t m = 0; m < rows.size(); ++m)
        {
            const bool same_series = rows[m].kernel == rows[k].kernel && rows[m].correction == rows[k].correction;
            if (same_series && rows[m].divisions * 2 == rows[k].divisions)
                rows[k].observed_order = std::log2(rows[m].gradient_l2 / rows[k].gradient_l2);
        }
    }
}
} // namespace

std::vector<StudyRow> convergence_study(Distribution distribution, KernelFamily family, bool correction,
                                        const std::vector<int> &divisions, const StudySettings &settings)
{
    std::vector<StudyRow> rows;
    for (int d : divisions)
    {
        const auto dist = make_study_distribution(distribution, d, settings);
        const auto e = evaluate_study(dist, family, correction, settings);
        rows.push_back({distribution, family, correction, d, dist.dp, e.gradient_l2, e.unity_l2, 0.0});
    }
    fill_orders(rows);
    return rows;
}

std::vector<StudyRow> full_study(Distribution distribution, const std::vector<int> &divisions,
                                 const StudySettings &settings)
{
    std::vector<StudyRow> rows;
    for (int d : divisions)
    {
        const auto dist = make_study_distribution(distribution, d, settings);
        for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated})
        {
            for (bool correction : {false, true})
            {
                const auto e = evaluate_study(dist, family, correction, settings);
                rows.push_back({distribution, family, correction, d, dist.dp, e.gradient_l2, e.unity_l2, 0.0});
            }
        }
    }
    fill_orders(rows);
    return rows;
}

double fitted_order(std::span<const double> h, std::span<const double> errors)
{
    if (h.size() != errors.size() || h.size() < 2)
        throw InputError("order fit needs at least two matching samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
    {
        const double lx = std::log(h[k]);
        const double ly = std::log(errors[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SmoothingOrderResult smoothing_order_check(KernelFamily family, const std::vector<double> &h_list,
                                           const std::function<double(const Vec2 &)> &f, const Vec2 &x0,
                                           int points_per_h)
{
    const auto func = f ? f : [](const Vec2 &x) { return exp_test_function(x.x()); };
    SmoothingOrderResult result;
    for (double h : h_list)
    {
        const Kernel kernel(family, h, 2);
        const double dp = h / points_per_h;
        const long n = static_cast<long>(std::ceil(kernel.cutoff() / dp));
        double weighted = 0.0, weights = 0.0;
        for (long a = -n; a < n; ++a)
        {
            for (long b = -n; b < n; ++b)
            {
                const Vec2 offset((a + 0.5) * dp, (b + 0.5) * dp);
                const double w = kernel.value(offset.norm());
                weighted += w * func(x0 + offset);
                weights += w;
            }
        }
        result.h.push_back(h);
        result.errors.push_back(std::abs(weighted / weights - func(x0)));
    }
    if (h_list.size() >= 2)
        result.exponent = fitted_order(result.h, result.errors);
    return result;
}

#define SPHTRUNC_INSTANTIATE(D)                                                                                        \
    template double sph_unity_sum<D>(std::size_t, const NeighborList<D> &, const Kernel &, std::span<const double>);  \
    template Vec<D> weak_gradient<D>(std::size_t, std::span<const double>, const NeighborList<D> &, const Kernel &,   \
                                     std::span<const double>, const CorrectionField<D> *);
SPHTRUNC_INSTANTIATE(2)
SPHTRUNC_INSTANTIATE(3)
#undef SPHTRUNC_INSTANTIATE
} // namespace sphtrunc
