#include "sphtrunc/kernel.h"

#include <gtest/gtest.h>

#include <numbers>

using namespace sphtrunc;

namespace
{
// Midpoint rule of the radial integral, independent of the library's own quadrature.
double radial_integral(const Kernel &k, double upper, int n = 200000)
{
    const double dr = upper / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double r = (i + 0.5) * dr;
        const double shell = k.dim() == 2 ? 2.0 * std::numbers::pi * r : 4.0 * std::numbers::pi * r * r;
        sum += k.value(r) * shell * dr;
    }
    return sum;
}
} // namespace

TEST(Kernel, WendlandClosedFormConstants)
{
    const double h = 0.37;
    EXPECT_NEAR(Kernel(KernelFamily::WendlandStandard, h, 2).alpha(), 7.0 / (4.0 * std::numbers::pi * h * h), 1e-12);
    EXPECT_NEAR(Kernel(KernelFamily::WendlandStandard, h, 3).alpha(), 21.0 / (16.0 * std::numbers::pi * h * h * h),
                1e-12);
    // Truncation keeps the standard constant.
    EXPECT_DOUBLE_EQ(Kernel(KernelFamily::WendlandTruncated, h, 2).alpha(),
                     Kernel(KernelFamily::WendlandStandard, h, 2).alpha());
}

TEST(Kernel, Cutoffs)
{
    EXPECT_DOUBLE_EQ(Kernel(KernelFamily::WendlandStandard, 0.5, 2).cutoff(), 1.0);
    EXPECT_DOUBLE_EQ(Kernel(KernelFamily::WendlandTruncated, 0.5, 2).cutoff(), 0.8);
    EXPECT_DOUBLE_EQ(Kernel(KernelFamily::LaguerreGauss, 0.5, 2).cutoff(), 1.0);
    const Kernel tw(KernelFamily::WendlandTruncated, 1.0, 2);
    EXPECT_GT(tw.value(1.6), 0.0);
    EXPECT_EQ(tw.value(1.6 + 1e-9), 0.0);
    EXPECT_EQ(tw.derivative(1.7), 0.0);
}

TEST(Kernel, NormalizationAgainstIndependentQuadrature)
{
    for (int dim : {2, 3})
    {
        const Kernel sw(KernelFamily::WendlandStandard, 0.8, dim);
        EXPECT_NEAR(radial_integral(sw, sw.cutoff()), 1.0, 1e-8);
        EXPECT_NEAR(sw.support_integral(), 1.0, 1e-8);

        const Kernel tw(KernelFamily::WendlandTruncated, 0.8, dim);
        const double tail_kept = radial_integral(tw, tw.cutoff());
        EXPECT_LT(tail_kept, 1.0);
        EXPECT_GT(tail_kept, 0.98);
        EXPECT_NEAR(tw.support_integral(), tail_kept, 1e-8);

        const Kernel lg(KernelFamily::LaguerreGauss, 0.8, dim);
        EXPECT_NEAR(radial_integral(lg, lg.cutoff()), 1.0, 1e-8);
    }
}

TEST(Kernel, LaguerreGaussReferenceConstant)
{
    // Integral of (1 - q^2 + q^4/6) exp(-q^2) over the plane is pi/3.
    const Kernel lg(KernelFamily::LaguerreGauss, 1.0, 2);
    EXPECT_NEAR(lg.reference_alpha(), 3.0 / std::numbers::pi, 1e-12);
    // The numerical constant compensates the tail beyond 2h, so it sits slightly above.
    EXPECT_GT(lg.alpha(), lg.reference_alpha());
    EXPECT_NEAR(lg.alpha(), 0.9727, 1e-3);
}

TEST(Kernel, DerivativeMatchesFiniteDifference)
{
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated, KernelFamily::LaguerreGauss})
    {
        const Kernel k(family, 0.6, 2);
        for (double r = 0.05; r < k.cutoff() - 0.01; r += 0.07)
        {
            const double eps = 1e-6;
            const double fd = (k.value(r + eps) - k.value(r - eps)) / (2.0 * eps);
            EXPECT_NEAR(k.derivative(r), fd, 1e-6 * std::max(1.0, std::abs(fd))) << to_string(family) << " r=" << r;
        }
    }
}

TEST(Kernel, WendlandMonotoneLaguerreGaussNot)
{
    const Kernel sw(KernelFamily::WendlandStandard, 1.0, 2);
    for (double r = 0.0; r <= 2.0; r += 0.01)
        EXPECT_LE(sw.derivative(r), 0.0);
    const Kernel lg(KernelFamily::LaguerreGauss, 1.0, 2);
    EXPECT_GT(lg.derivative(1.8), 0.0);
    EXPECT_LT(lg.value(1.5), 0.0);
}

TEST(Kernel, NegativeDistanceThrows)
{
    const Kernel k(KernelFamily::WendlandStandard, 1.0, 2);
    EXPECT_THROW(k.value(-0.1), DomainError);
    EXPECT_THROW(k.derivative(-1e-12), DomainError);
}

TEST(Kernel, InvalidConstruction)
{
    EXPECT_THROW(Kernel(KernelFamily::WendlandStandard, 0.0, 2), InputError);
    EXPECT_THROW(Kernel(KernelFamily::WendlandStandard, 1.0, 4), InputError);
}

TEST(Kernel, FamilyNames)
{
    EXPECT_EQ(parse_kernel_family("sw"), KernelFamily::WendlandStandard);
    EXPECT_EQ(parse_kernel_family("tw"), KernelFamily::WendlandTruncated);
    EXPECT_EQ(parse_kernel_family("lg"), KernelFamily::LaguerreGauss);
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated, KernelFamily::LaguerreGauss})
        EXPECT_EQ(parse_kernel_family(to_string(family)), family);
    EXPECT_THROW(parse_kernel_family("cubic"), ConfigError);
}
