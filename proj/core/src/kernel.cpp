#include "sphtrunc/kernel.h"

#include <numbers>

namespace sphtrunc
{
namespace
{
constexpr double pi = std::numbers::pi;

// Composite Simpson rule for int_0^kappa P(q) q^(dim-1) dq.
template <typename Profile>
double radial_moment(const Profile &profile, double kappa, int dim, int intervals = 20000)
{
    const double dq = kappa / intervals;
    double sum = 0.0;
    for (int k = 0; k <= intervals; ++k)
    {
        const double q = k * dq;
        const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += weight * profile(q) * std::pow(q, dim - 1);
    }
    return sum * dq / 3.0;
}

double wendland_alpha(int dim, double h)
{
    switch (dim)
    {
    case 1:
        return 3.0 / (4.0 * h);
    case 2:
        return 7.0 / (4.0 * pi * h * h);
    default:
        return 21.0 / (16.0 * pi * h * h * h);
    }
}
} // namespace

std::string_view to_string(KernelFamily family)
{
    switch (family)
    {
    case KernelFamily::WendlandStandard:
        return "wendland-standard";
    case KernelFamily::WendlandTruncated:
        return "wendland-truncated";
    case KernelFamily::LaguerreGauss:
        return "laguerre-gauss";
    }
    return "unknown";
}

KernelFamily parse_kernel_family(std::string_view text)
{
    if (text == "wendland-standard" || text == "sw" || text == "SW")
        return KernelFamily::WendlandStandard;
    if (text == "wendland-truncated" || text == "tw" || text == "TW")
        return KernelFamily::WendlandTruncated;
    if (text == "laguerre-gauss" || text == "lg" || text == "LG")
        return KernelFamily::LaguerreGauss;
    throw ConfigError("unknown kernel family '" + std::string(text) + "'");
}

double unit_sphere_measure(int dim)
{
    switch (dim)
    {
    case 1:
        return 2.0;
    case 2:
        return 2.0 * pi;
    default:
        return 4.0 * pi;
    }
}

Kernel::Kernel(KernelFamily family, double h, int dim)
    : family_(family), h_(h), inv_h_(1.0 / h), dim_(dim)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw InputError("smoothing length must be positive and finite");
    if (dim < 1 || dim > 3)
        throw InputError("kernel dimension must be 1, 2 or 3");

    kappa_ = family == KernelFamily::WendlandTruncated ? 1.6 : 2.0;
    if (family == KernelFamily::LaguerreGauss)
    {
        const double moment = radial_moment([this](double q) { return shape(q); }, kappa_, dim);
        alpha_ = 1.0 / (unit_sphere_measure(dim) * moment * std::pow(h, dim));
    }
    else
    {
        alpha_ = wendland_alpha(dim, h);
    }
}

double Kernel::reference_alpha() const
{
    if (family_ != KernelFamily::LaguerreGauss)
        return wendland_alpha(dim_, h_);
    switch (dim_)
    {
    case 1:
        return 8.0 / (5.0 * std::sqrt(pi) * h_);
    case 2:
        return 3.0 / (pi * h_ * h_);
    default:
        return 8.0 / (std::pow(pi, 1.5) * h_ * h_ * h_);
    }
}

double Kernel::support_integral() const
{
    const double moment = radial_moment([this](double q) { return shape(q); }, kappa_, dim_);
    return alpha_ * unit_sphere_measure(dim_) * moment * std::pow(h_, dim_);
}
} // namespace sphtrunc
