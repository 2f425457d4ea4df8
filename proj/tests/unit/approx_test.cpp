#include "sphtrunc/approx.h"
#include "sphtrunc/geometry.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace sphtrunc;

TEST(Approx, L2Error)
{
    const std::vector<double> ref{3.0, 4.0};
    const std::vector<double> num{3.0, 4.5};
    EXPECT_DOUBLE_EQ(l2_error(num, ref), 0.1);
    EXPECT_DOUBLE_EQ(l2_error(ref, ref), 0.0);
    EXPECT_THROW(l2_error(num, std::vector<double>{0.0, 0.0}), DomainError);
    EXPECT_THROW(l2_error(num, std::vector<double>{1.0}), InputError);
}

TEST(Approx, FittedOrderOfPowerLaw)
{
    const std::vector<double> h{0.2, 0.1, 0.05, 0.025};
    std::vector<double> e;
    for (double v : h)
        e.push_back(3.0 * v * v);
    EXPECT_NEAR(fitted_order(h, e), 2.0, 1e-12);
    EXPECT_THROW(fitted_order(std::vector<double>{0.1}, std::vector<double>{1.0}), InputError);
}

TEST(Approx, TestFunctionDerivative)
{
    for (double x = -0.9; x < 0.9; x += 0.13)
    {
        const double fd = (exp_test_function(x + 1e-6) - exp_test_function(x - 1e-6)) / 2e-6;
        EXPECT_NEAR(exp_test_derivative(x), fd, 1e-7);
    }
}

TEST(Approx, UnitySumOnLatticeInterior)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    const std::vector<double> vol(x.size(), dp * dp);
    const std::size_t i = 10 * 20 + 10;
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated})
    {
        const Kernel k(family, 1.3 * dp, 2);
        const auto list = build_neighbors<2>(x, k.cutoff());
        double direct = 0.0;
        for (const auto &p : x)
            direct += k.value((p - x[i]).norm()) * dp * dp;
        EXPECT_NEAR(sph_unity_sum<2>(i, list, k, vol), direct, 1e-12);
        EXPECT_NEAR(direct, 1.0, 0.02);
    }
}

TEST(Approx, WeakGradientOfLinearField)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    const std::vector<double> vol(x.size(), dp * dp);
    const Vec2 a(0.8, -1.1);
    std::vector<double> f;
    for (const auto &p : x)
        f.push_back(a.dot(p) + 2.0);
    const Kernel k(KernelFamily::WendlandTruncated, 1.3 * dp, 2);
    const auto list = build_neighbors<2>(x, k.cutoff());
    const auto correction = compute_corrections<2>(list, k, vol);
    // Deep interior: every neighbor has the same full stencil, so B_j = B_i.
    const std::size_t i = 10 * 20 + 10;
    EXPECT_LT((weak_gradient<2>(i, f, list, k, vol, &correction) - a).norm(), 1e-10);
    // Uncorrected, the truncated kernel loses part of the gradient moment.
    const Vec2 raw = weak_gradient<2>(i, f, list, k, vol);
    EXPECT_GT((raw - a).norm(), 1e-3);
    EXPECT_LT((raw - a).norm(), 0.2 * a.norm());
}

TEST(Approx, WeakGradientGlobalSumVanishes)
{
    const double dp = 0.1;
    const auto x = lattice_fill<2>(Circle{Vec2::Zero(), 2.0}, dp);
    const std::vector<double> vol(x.size(), dp * dp);
    std::vector<double> f;
    for (const auto &p : x)
        f.push_back(std::sin(3.0 * p.x()) + p.y() * p.y());
    const Kernel k(KernelFamily::WendlandStandard, 1.3 * dp, 2);
    const auto list = build_neighbors<2>(x, k.cutoff());
    const auto correction = compute_corrections<2>(list, k, vol);
    Vec2 total = Vec2::Zero();
    for (std::size_t i = 0; i < x.size(); ++i)
        total += vol[i] * weak_gradient<2>(i, f, list, k, vol, &correction);
    EXPECT_LT(total.norm(), 1e-12);
}

TEST(Approx, SmoothingErrorOfQuadraticIsSecondMoment)
{
    // For f = x^2 the Shepard smoothing error at the origin is M2 / (2 M0), proportional to h^2.
    const auto f = [](const Vec2 &x) { return x.x() * x.x(); };
    const std::vector<double> h{0.2, 0.1, 0.05};
    const auto result = smoothing_order_check(KernelFamily::WendlandTruncated, h, f, Vec2::Zero(), 60);
    EXPECT_NEAR(result.exponent, 2.0, 1e-3);

    const auto sw = smoothing_order_check(KernelFamily::WendlandStandard, {0.1}, f, Vec2::Zero(), 60);
    const Kernel k(KernelFamily::WendlandStandard, 0.1, 2);
    double m0 = 0.0, m2 = 0.0;
    const int n = 100000;
    for (int s = 0; s < n; ++s)
    {
        const double r = (s + 0.5) * k.cutoff() / n;
        const double w = k.value(r) * r;
        m0 += w;
        m2 += w * r * r;
    }
    EXPECT_NEAR(sw.errors[0], m2 / (2.0 * m0), 1e-3 * m2 / m0);
}

TEST(Approx, DistributionNames)
{
    for (auto d : {Distribution::Lattice, Distribution::RelaxedWendland, Distribution::RelaxedLaguerreGauss})
        EXPECT_EQ(parse_distribution(to_string(d)), d);
    EXPECT_THROW(parse_distribution("hexagonal"), ConfigError);
}

TEST(Approx, StudyOnCoarseLattice)
{
    const auto dist = make_study_distribution(Distribution::Lattice, 10);
    EXPECT_DOUBLE_EQ(dist.dp, 0.2);
    EXPECT_TRUE(dist.residual_history.empty());
    const auto sw = evaluate_study(dist, KernelFamily::WendlandStandard, false);
    const auto tw = evaluate_study(dist, KernelFamily::WendlandTruncated, false);
    EXPECT_EQ(sw.evaluated, tw.evaluated);
    EXPECT_GT(sw.evaluated, 0u);
    EXPECT_GT(sw.unity_l2, 0.0);
    const auto swc = evaluate_study(dist, KernelFamily::WendlandStandard, true);
    EXPECT_LT(swc.gradient_l2, sw.gradient_l2);
    EXPECT_THROW(make_study_distribution(Distribution::Lattice, 0), InputError);
}
