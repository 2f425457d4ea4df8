#pragma once

#include "sphtrunc/types.h"

#include <optional>
#include <span>

namespace sphtrunc
{
template <int Dim>
struct Neighbor
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    Index j;
    double r;
    Vec<Dim> e; ///< unit vector from j toward i, (x_i - x_j) / r
};

/// Axis-aligned periodic box [lower, upper); distances use the minimum image.
template <int Dim>
struct PeriodicBox
{
    Vec<Dim> lower;
    Vec<Dim> upper;
    Vec<Dim> extent() const { return upper - lower; }
};

/**
 * Compressed per-particle neighbor lists. Pairs satisfy 0 < r <= cutoff; the particle itself is
 * never listed.
 */
template <int Dim>
class NeighborList
{
  public:
    using Entry = Neighbor<Dim>;

    NeighborList() = default;
    NeighborList(std::vector<std::size_t> offsets, std::vector<Entry, Eigen::aligned_allocator<Entry>> entries,
                 double cutoff)
        : offsets_(std::move(offsets)), entries_(std::move(entries)), cutoff_(cutoff)
    {
    }

    std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    double cutoff() const { return cutoff_; }
    std::size_t pair_count() const { return entries_.size(); }

    std::span<const Entry> of(std::size_t i) const
    {
        return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t count(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
    /// Position of the first entry of particle i in the flat entry array.
    std::size_t offset(std::size_t i) const { return offsets_[i]; }

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Entry, Eigen::aligned_allocator<Entry>> entries_;
    double cutoff_ = 0.0;
};

/**
 * Cell-linked-list search with cell size equal to the cutoff.
 *
 * Only the first query_count particles receive lists (all particles are candidates). This lets
 * callers append static ghost or quadrature points that act as neighbors but need no list of
 * their own. query_count defaults to all particles.
 */
template <int Dim>
NeighborList<Dim> build_neighbors(const PointArray<Dim> &positions, double cutoff,
                                  const std::optional<PeriodicBox<Dim>> &box = std::nullopt,
                                  std::optional<std::size_t> query_count = std::nullopt);

/// O(N^2) search with the same semantics; reference for tests and tiny sets.
template <int Dim>
NeighborList<Dim> build_neighbors_brute_force(const PointArray<Dim> &positions, double cutoff,
                                              const std::optional<PeriodicBox<Dim>> &box = std::nullopt);

/// Mean neighbor count at cutoff_tw over mean count at cutoff_sw, restricted to particles whose
/// cutoff_sw ball lies inside the bounding box of the set (interior particles).
template <int Dim>
double neighbor_count_ratio(const PointArray<Dim> &positions, double cutoff_tw, double cutoff_sw);

/// Mean list length over the particles flagged interior by the same rule as neighbor_count_ratio.
template <int Dim>
double mean_interior_count(const PointArray<Dim> &positions, double cutoff, double margin);
} // namespace sphtrunc
