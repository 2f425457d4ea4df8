#include "sphtrunc/correction.h"
#include "sphtrunc/geometry.h"

#include <gtest/gtest.h>

#include <random>

using namespace sphtrunc;

namespace
{
PointArray<2> jittered_lattice(double dp, double jitter, unsigned seed)
{
    auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-jitter * dp, jitter * dp);
    for (auto &p : x)
        p += Vec2(u(rng), u(rng));
    return x;
}
} // namespace

TEST(Correction, MatchesDirectMomentInverse)
{
    const double dp = 0.05;
    const auto x = jittered_lattice(dp, 0.2, 1);
    const Kernel k(KernelFamily::WendlandStandard, 1.3 * dp, 2);
    const std::vector<double> vol(x.size(), dp * dp);
    const auto list = build_neighbors<2>(x, k.cutoff());
    const std::size_t i = x.size() / 2 + 10;

    Mat2 moment = Mat2::Zero();
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        const Vec2 r = x[i] - x[j];
        const double d = r.norm();
        if (j == i || d > k.cutoff())
            continue;
        moment += r * (k.derivative(d) * r / d).transpose() * vol[j];
    }
    const Mat2 expected = (-moment).inverse();
    const auto c = correction_matrix<2>(i, list, k, vol);
    EXPECT_LT((c.B - expected).norm(), 1e-10 * expected.norm());
    EXPECT_FALSE(c.regularized);
    EXPECT_NEAR(c.moment_det, (-moment).determinant(), 1e-12);
}

TEST(Correction, RestoresLinearGradientOnDisorderedStencils)
{
    const double dp = 0.05;
    const auto x = jittered_lattice(dp, 0.3, 2);
    const std::vector<double> vol(x.size(), dp * dp);
    const Vec2 a(1.7, -0.4);
    for (auto family : {KernelFamily::WendlandStandard, KernelFamily::WendlandTruncated})
    {
        const Kernel k(family, 1.3 * dp, 2);
        const auto list = build_neighbors<2>(x, k.cutoff());
        const auto field = compute_corrections<2>(list, k, vol);
        for (std::size_t i = 0; i < x.size(); i += 37)
        {
            Vec2 grad = Vec2::Zero();
            for (const auto &nb : list.of(i))
                grad += (a.dot(x[nb.j]) - a.dot(x[i])) * (field.B[i] * (k.derivative(nb.r) * nb.e)) * vol[nb.j];
            EXPECT_LT((grad - a).norm(), 1e-9) << "particle " << i;
        }
    }
}

TEST(Correction, FullLatticeIsNearIdentity)
{
    const double dp = 0.05;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    const Kernel k(KernelFamily::WendlandStandard, 1.3 * dp, 2);
    const std::vector<double> vol(x.size(), dp * dp);
    const auto list = build_neighbors<2>(x, k.cutoff());
    const auto c = correction_matrix<2>(10 * 20 + 10, list, k, vol);
    EXPECT_LT((c.B - Mat2::Identity()).norm(), 0.05);
    EXPECT_NEAR(c.B(0, 1), 0.0, 1e-12);
    EXPECT_NEAR(c.B(0, 0), c.B(1, 1), 1e-12);
}

TEST(Correction, DegenerateStencilsAreRegularized)
{
    const Kernel k(KernelFamily::WendlandStandard, 1.0, 2);
    // A collinear stencil has a rank-one moment matrix.
    PointArray<2> line{Vec2(0.0, 0.0), Vec2(0.5, 0.0), Vec2(-0.5, 0.0)};
    const std::vector<double> vol(3, 1.0);
    auto list = build_neighbors<2>(line, k.cutoff());
    const auto c = correction_matrix<2>(0, list, k, vol);
    EXPECT_TRUE(c.regularized);
    EXPECT_TRUE(c.B.allFinite());

    // An isolated particle falls back to the identity.
    PointArray<2> alone{Vec2::Zero(), Vec2(10.0, 0.0)};
    list = build_neighbors<2>(alone, k.cutoff());
    const auto c0 = correction_matrix<2>(0, list, k, std::vector<double>(2, 1.0));
    EXPECT_TRUE(c0.regularized);
    EXPECT_EQ(c0.B, Mat2::Identity());

    const auto field = compute_corrections<2>(build_neighbors<2>(line, k.cutoff()), k, vol);
    EXPECT_EQ(field.regularized_count, 3u);
}

TEST(Correction, SymmetrizedGradient)
{
    const Mat2 bi = Mat2::Identity() * 2.0;
    const Mat2 bj = Mat2::Identity() * 4.0;
    const Vec2 g(1.0, -1.0);
    EXPECT_EQ(corrected_gradient<2>(bi, bj, g), Vec2(3.0, -3.0));
    EXPECT_EQ(corrected_gradient<2>(Mat2::Identity(), Mat2::Identity(), g), g);
}
