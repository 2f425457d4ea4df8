#pragma once

#include "sphtrunc/kernel.h"
#include "sphtrunc/neighbor.h"

#include <span>

namespace sphtrunc
{
template <int Dim>
struct CorrectionMatrix
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    Mat<Dim> B = Mat<Dim>::Identity();
    double moment_det = 1.0;  ///< det of the negated moment matrix; 1 on a full symmetric stencil
    double condition = 1.0;   ///< ratio of largest to smallest eigenvalue of the moment matrix
    bool regularized = false; ///< singular values clamped or blended toward identity
};

/// Thresholds of the deficient-support regularization.
struct CorrectionSettings
{
    double singular_floor = 1e-4; ///< eigenvalues below this fraction of the largest are raised to it
    double det_blend = 1e-2;      ///< below this moment determinant B is blended toward identity
};

/**
 * B_i = -(sum_j r_ij (x) grad W_ij V_j)^-1 with r_ij = x_i - x_j.
 *
 * The negated moment matrix is symmetric positive semi-definite. Its inverse is taken through
 * the eigen decomposition with eigenvalues floored at singular_floor times the largest; when the
 * determinant falls below det_blend the result is blended linearly toward the identity, reaching
 * the identity (no correction) for a degenerate stencil.
 */
template <int Dim>
CorrectionMatrix<Dim> correction_matrix(std::size_t i, const NeighborList<Dim> &neighbors, const Kernel &kernel,
                                        std::span<const double> volumes, const CorrectionSettings &settings = {});

template <int Dim>
struct CorrectionField
{
    MatrixArray<Dim> B;
    std::size_t regularized_count = 0;
};

template <int Dim>
CorrectionField<Dim> compute_corrections(const NeighborList<Dim> &neighbors, const Kernel &kernel,
                                         std::span<const double> volumes, const CorrectionSettings &settings = {});

/// Symmetrized corrected gradient ((B_i + B_j) / 2) grad W_ij.
template <int Dim>
Vec<Dim> corrected_gradient(const Mat<Dim> &B_i, const Mat<Dim> &B_j, const Vec<Dim> &grad_w)
{
    return 0.5 * ((B_i + B_j) * grad_w);
}
} // namespace sphtrunc
