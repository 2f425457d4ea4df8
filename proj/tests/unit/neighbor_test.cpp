#include "sphtrunc/geometry.h"
#include "sphtrunc/neighbor.h"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <utility>

using namespace sphtrunc;

namespace
{
template <int Dim>
PointArray<Dim> random_points(std::size_t n, double extent, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, extent);
    PointArray<Dim> out(n);
    for (auto &x : out)
        for (int k = 0; k < Dim; ++k)
            x[k] = u(rng);
    return out;
}

template <int Dim>
std::set<std::pair<Index, Index>> pair_set(const NeighborList<Dim> &list)
{
    std::set<std::pair<Index, Index>> out;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (const auto &nb : list.of(i))
            out.emplace(static_cast<Index>(i), nb.j);
    return out;
}
} // namespace

TEST(Neighbor, CellListMatchesBruteForce2D)
{
    const auto x = random_points<2>(600, 1.0, 7);
    const auto cells = build_neighbors<2>(x, 0.08);
    const auto brute = build_neighbors_brute_force<2>(x, 0.08);
    EXPECT_EQ(pair_set(cells), pair_set(brute));
    EXPECT_GT(cells.pair_count(), 0u);
}

TEST(Neighbor, CellListMatchesBruteForce3DPeriodic)
{
    const auto x = random_points<3>(500, 1.0, 11);
    const PeriodicBox<3> box{Vec3::Zero(), Vec3::Ones()};
    const auto cells = build_neighbors<3>(x, 0.15, box);
    const auto brute = build_neighbors_brute_force<3>(x, 0.15, box);
    EXPECT_EQ(pair_set(cells), pair_set(brute));
}

TEST(Neighbor, EntriesAreConsistent)
{
    const auto x = random_points<2>(300, 1.0, 3);
    const double cutoff = 0.1;
    const auto list = build_neighbors<2>(x, cutoff);
    const auto pairs = pair_set(list);
    for (std::size_t i = 0; i < list.size(); ++i)
    {
        for (const auto &nb : list.of(i))
        {
            EXPECT_NE(nb.j, i);
            EXPECT_GT(nb.r, 0.0);
            EXPECT_LE(nb.r, cutoff);
            EXPECT_NEAR((x[i] - x[nb.j]).norm(), nb.r, 1e-14);
            EXPECT_TRUE(((x[i] - x[nb.j]) / nb.r - nb.e).norm() < 1e-14);
            EXPECT_TRUE(pairs.count({nb.j, static_cast<Index>(i)}));
        }
    }
}

TEST(Neighbor, PeriodicMinimumImage)
{
    PointArray<2> x{Vec2(0.01, 0.5), Vec2(0.99, 0.5)};
    const PeriodicBox<2> box{Vec2::Zero(), Vec2::Ones()};
    const auto list = build_neighbors<2>(x, 0.05, box);
    ASSERT_EQ(list.count(0), 1u);
    EXPECT_NEAR(list.of(0)[0].r, 0.02, 1e-14);
    // e points from j toward i across the seam.
    EXPECT_NEAR(list.of(0)[0].e.x(), 1.0, 1e-12);
    EXPECT_EQ(build_neighbors<2>(x, 0.05).pair_count(), 0u);
}

TEST(Neighbor, QueryCountLimitsLists)
{
    const auto x = random_points<2>(200, 1.0, 5);
    const auto full = build_neighbors<2>(x, 0.1);
    const auto part = build_neighbors<2>(x, 0.1, std::nullopt, 50);
    ASSERT_EQ(part.size(), 50u);
    for (std::size_t i = 0; i < 50; ++i)
        EXPECT_EQ(part.count(i), full.count(i));
}

TEST(Neighbor, LatticeCountsFromEnumeration)
{
    const double dp = 0.02;
    const auto x = lattice_fill<2>(Rectangle{Vec2::Zero(), Vec2::Ones()}, dp);
    for (double kappa : {2.0, 1.6})
    {
        const double cutoff = kappa * 1.3 * dp;
        int expected = 0;
        for (int a = -5; a <= 5; ++a)
            for (int b = -5; b <= 5; ++b)
                if ((a != 0 || b != 0) && std::hypot(a, b) * dp <= cutoff)
                    ++expected;
        EXPECT_DOUBLE_EQ(mean_interior_count<2>(x, cutoff, 2.0 * 1.3 * dp), expected);
    }
    // 12 against 20 lattice neighbors; the (0.8)^2 volume ratio holds within the lattice granularity.
    const double ratio = neighbor_count_ratio<2>(x, 1.6 * 1.3 * dp, 2.0 * 1.3 * dp);
    EXPECT_NEAR(ratio, 0.64, 0.12);
}

TEST(Neighbor, InvalidInput)
{
    PointArray<2> x{Vec2(0.0, 0.0)};
    EXPECT_THROW(build_neighbors<2>(x, 0.0), InputError);
    x.push_back(Vec2(std::nan(""), 0.0));
    EXPECT_THROW(build_neighbors<2>(x, 0.1), InputError);
    EXPECT_THROW(mean_interior_count<2>(PointArray<2>{}, 0.1, 0.1), InputError);
}
