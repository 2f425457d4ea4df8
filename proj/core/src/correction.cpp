#include "sphtrunc/correction.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace sphtrunc
{
template <int Dim>
CorrectionMatrix<Dim> correction_matrix(std::size_t i, const NeighborList<Dim> &neighbors, const Kernel &kernel,
                                        std::span<const double> volumes, const CorrectionSettings &settings)
{
    // Negated moment matrix: -sum r_ij (x) grad W_ij V_j = -sum r dW/dr (e (x) e) V_j.
    Mat<Dim> moment = Mat<Dim>::Zero();
    for (const auto &nb : neighbors.of(i))
        moment -= (nb.r * kernel.derivative(nb.r) * volumes[nb.j]) * (nb.e * nb.e.transpose());

    CorrectionMatrix<Dim> out;
    const Eigen::SelfAdjointEigenSolver<Mat<Dim>> eig(moment);
    Vec<Dim> lambda = eig.eigenvalues();
    const double largest = lambda.cwiseAbs().maxCoeff();
    if (!(largest > 0.0) || !std::isfinite(largest))
    {
        out.moment_det = 0.0;
        out.condition = std::numeric_limits<double>::infinity();
        out.regularized = true;
        return out;
    }
    out.moment_det = moment.determinant();
    const double floor = settings.singular_floor * largest;
    out.condition = largest / std::max(lambda.minCoeff(), 0.0);
    for (int k = 0; k < Dim; ++k)
    {
        if (lambda[k] < floor)
        {
            lambda[k] = floor;
            out.regularized = true;
        }
    }
    const Mat<Dim> inverse = eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    const double theta = std::clamp(out.moment_det / settings.det_blend, 0.0, 1.0);
    if (theta < 1.0)
        out.regularized = true;
    out.B = theta * inverse + (1.0 - theta) * Mat<Dim>::Identity();
    return out;
}

template <int Dim>
CorrectionField<Dim> compute_corrections(const NeighborList<Dim> &neighbors, const Kernel &kernel,
                                         std::span<const double> volumes, const CorrectionSettings &settings)
{
    CorrectionField<Dim> field;
    field.B.resize(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i)
    {
        const auto c = correction_matrix<Dim>(i, neighbors, kernel, volumes, settings);
        field.B[i] = c.B;
        field.regularized_count += c.regularized ? 1 : 0;
    }
    return field;
}

#define SPHTRUNC_INSTANTIATE(D)                                                                                        \
    template CorrectionMatrix<D> correction_matrix<D>(std::size_t, const NeighborList<D> &, const Kernel &,           \
                                                      std::span<const double>, const CorrectionSettings &);            \
    template CorrectionField<D> compute_corrections<D>(const NeighborList<D> &, const Kernel &,                       \
                                                       std::span<const double>, const CorrectionSettings &);
SPHTRUNC_INSTANTIATE(2)
SPHTRUNC_INSTANTIATE(3)
#undef SPHTRUNC_INSTANTIATE
} // namespace sphtrunc
