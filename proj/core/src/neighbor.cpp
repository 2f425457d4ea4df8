#include "sphtrunc/neighbor.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace sphtrunc
{
namespace
{
template <int Dim>
void check_inputs(const PointArray<Dim> &positions, double cutoff)
{
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw InputError("neighbor cutoff must be positive and finite");
    for (const auto &x : positions)
        if (!x.allFinite())
            throw InputError("non-finite particle position");
}

template <int Dim>
Vec<Dim> minimum_image(Vec<Dim> d, const std::optional<PeriodicBox<Dim>> &box)
{
    if (!box)
        return d;
    const Vec<Dim> L = box->extent();
    for (int k = 0; k < Dim; ++k)
        d[k] -= L[k] * std::round(d[k] / L[k]);
    return d;
}

template <int Dim>
struct CellGrid
{
    std::array<long, Dim> n{};
    Vec<Dim> origin;
    Vec<Dim> size;
    bool periodic = false;
    std::vector<std::size_t> start; // counting-sort offsets per cell
    std::vector<Index> sorted;

    long flat(const std::array<long, Dim> &c) const
    {
        long f = 0;
        for (int k = Dim - 1; k >= 0; --k)
            f = f * n[k] + c[k];
        return f;
    }

    std::array<long, Dim> cell_of(const Vec<Dim> &x) const
    {
        std::array<long, Dim> c{};
        for (int k = 0; k < Dim; ++k)
        {
            long v = static_cast<long>(std::floor((x[k] - origin[k]) / size[k]));
            if (periodic)
                v = ((v % n[k]) + n[k]) % n[k];
            else
                v = std::clamp(v, 0L, n[k] - 1);
            c[k] = v;
        }
        return c;
    }
};

template <int Dim>
CellGrid<Dim> make_grid(const PointArray<Dim> &positions, double cutoff, const std::optional<PeriodicBox<Dim>> &box)
{
    CellGrid<Dim> grid;
    if (box)
    {
        grid.periodic = true;
        grid.origin = box->lower;
        const Vec<Dim> L = box->extent();
        for (int k = 0; k < Dim; ++k)
        {
            grid.n[k] = std::max(1L, static_cast<long>(std::floor(L[k] / cutoff)));
            grid.size[k] = L[k] / grid.n[k];
        }
    }
    else
    {
        Vec<Dim> lo = Vec<Dim>::Constant(0.0), hi = Vec<Dim>::Constant(0.0);
        if (!positions.empty())
        {
            lo = positions.front();
            hi = positions.front();
            for (const auto &x : positions)
            {
                lo = lo.cwiseMin(x);
                hi = hi.cwiseMax(x);
            }
        }
        grid.origin = lo;
        for (int k = 0; k < Dim; ++k)
        {
            grid.n[k] = static_cast<long>(std::floor((hi[k] - lo[k]) / cutoff)) + 1;
            grid.size[k] = cutoff;
        }
    }
    long total = 1;
    for (int k = 0; k < Dim; ++k)
        total *= grid.n[k];

    std::vector<long> key(positions.size());
    grid.start.assign(total + 1, 0);
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        key[i] = grid.flat(grid.cell_of(positions[i]));
        ++grid.start[key[i] + 1];
    }
    for (long c = 0; c < total; ++c)
        grid.start[c + 1] += grid.start[c];
    grid.sorted.resize(positions.size());
    std::vector<std::size_t> fill(grid.start.begin(), grid.start.end() - 1);
    for (std::size_t i = 0; i < positions.size(); ++i)
        grid.sorted[fill[key[i]]++] = static_cast<Index>(i);
    return grid;
}

// Flat indices of the (up to 3^Dim) cells adjacent to c, without duplicates.
template <int Dim>
void adjacent_cells(const CellGrid<Dim> &grid, const std::array<long, Dim> &c, std::vector<long> &out)
{
    out.clear();
    constexpr int combos = Dim == 2 ? 9 : (Dim == 3 ? 27 : 3);
    for (int m = 0; m < combos; ++m)
    {
        std::array<long, Dim> nc{};
        int code = m;
        bool valid = true;
        for (int k = 0; k < Dim; ++k)
        {
            long v = c[k] + (code % 3) - 1;
            code /= 3;
            if (grid.periodic)
                v = ((v % grid.n[k]) + grid.n[k]) % grid.n[k];
            else if (v < 0 || v >= grid.n[k])
                valid = false;
            nc[k] = v;
        }
        if (valid)
            out.push_back(grid.flat(nc));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}
} // namespace

template <int Dim>
NeighborList<Dim> build_neighbors(const PointArray<Dim> &positions, double cutoff,
                                  const std::optional<PeriodicBox<Dim>> &box, std::optional<std::size_t> query_count)
{
    check_inputs(positions, cutoff);
    const std::size_t n_query = std::min(query_count.value_or(positions.size()), positions.size());
    const CellGrid<Dim> grid = make_grid(positions, cutoff, box);

    std::vector<std::size_t> offsets(n_query + 1, 0);
    std::vector<Neighbor<Dim>, Eigen::aligned_allocator<Neighbor<Dim>>> entries;
    entries.reserve(n_query * (Dim == 3 ? 60 : 24));
    std::vector<long> cells;
    const double cutoff2 = cutoff * cutoff;
    for (std::size_t i = 0; i < n_query; ++i)
    {
        const Vec<Dim> &xi = positions[i];
        adjacent_cells<Dim>(grid, grid.cell_of(xi), cells);
        for (long c : cells)
        {
            for (std::size_t s = grid.start[c]; s < grid.start[c + 1]; ++s)
            {
                const Index j = grid.sorted[s];
                if (j == i)
                    continue;
                const Vec<Dim> d = minimum_image<Dim>(xi - positions[j], box);
                const double r2 = d.squaredNorm();
                if (r2 > cutoff2 || r2 == 0.0)
                    continue;
                const double r = std::sqrt(r2);
                entries.push_back({j, r, d / r});
            }
        }
        offsets[i + 1] = entries.size();
    }
    return NeighborList<Dim>(std::move(offsets), std::move(entries), cutoff);
}

template <int Dim>
NeighborList<Dim> build_neighbors_brute_force(const PointArray<Dim> &positions, double cutoff,
                                              const std::optional<PeriodicBox<Dim>> &box)
{
    check_inputs(positions, cutoff);
    std::vector<std::size_t> offsets(positions.size() + 1, 0);
    std::vector<Neighbor<Dim>, Eigen::aligned_allocator<Neighbor<Dim>>> entries;
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        for (std::size_t j = 0; j < positions.size(); ++j)
        {
            if (i == j)
                continue;
            const Vec<Dim> d = minimum_image<Dim>(positions[i] - positions[j], box);
            const double r = d.norm();
            if (r > 0.0 && r <= cutoff)
                entries.push_back({static_cast<Index>(j), r, d / r});
        }
        offsets[i + 1] = entries.size();
    }
    return NeighborList<Dim>(std::move(offsets), std::move(entries), cutoff);
}

template <int Dim>
double mean_interior_count(const PointArray<Dim> &positions, double cutoff, double margin)
{
    if (positions.empty())
        throw InputError("neighbor statistics requested for an empty particle set");
    Vec<Dim> lo = positions.front(), hi = positions.front();
    for (const auto &x : positions)
    {
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    const auto list = build_neighbors(positions, cutoff);
    double total = 0.0;
    std::size_t interior = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
    {
        const Vec<Dim> &x = positions[i];
        if (((x - lo).array() >= margin).all() && ((hi - x).array() >= margin).all())
        {
            total += static_cast<double>(list.count(i));
            ++interior;
        }
    }
    if (interior == 0)
        throw InputError("no interior particles for neighbor statistics");
    return total / static_cast<double>(interior);
}

template <int Dim>
double neighbor_count_ratio(const PointArray<Dim> &positions, double cutoff_tw, double cutoff_sw)
{
    if (!(cutoff_tw > 0.0) || !(cutoff_sw > 0.0))
        throw InputError("cutoffs must be positive");
    const double margin = std::max(cutoff_tw, cutoff_sw);
    return mean_interior_count(positions, cutoff_tw, margin) / mean_interior_count(positions, cutoff_sw, margin);
}

#define SPHTRUNC_INSTANTIATE(D)                                                                                        \
    template NeighborList<D> build_neighbors<D>(const PointArray<D> &, double, const std::optional<PeriodicBox<D>> &, \
                                                std::optional<std::size_t>);                                           \
    template NeighborList<D> build_neighbors_brute_force<D>(const PointArray<D> &, double,                             \
                                                            const std::optional<PeriodicBox<D>> &);                    \
    template double mean_interior_count<D>(const PointArray<D> &, double, double);                                     \
    template double neighbor_count_ratio<D>(const PointArray<D> &, double, double);
SPHTRUNC_INSTANTIATE(1)
SPHTRUNC_INSTANTIATE(2)
SPHTRUNC_INSTANTIATE(3)
#undef SPHTRUNC_INSTANTIATE
} // namespace sphtrunc
