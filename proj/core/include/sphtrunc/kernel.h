#pragma once

#include "sphtrunc/types.h"

#include <cmath>
#include <string>
#include <string_view>

namespace sphtrunc
{
enum class KernelFamily
{
    WendlandStandard,  ///< Wendland C2, support 2h
    WendlandTruncated, ///< Wendland C2 with the support cut at 1.6h, standard normalization kept
    LaguerreGauss      ///< fourth-order Laguerre-Gauss, support 2h, used for particle relaxation
};

std::string_view to_string(KernelFamily family);
/// Accepts "wendland-standard"/"sw", "wendland-truncated"/"tw", "laguerre-gauss"/"lg".
KernelFamily parse_kernel_family(std::string_view text);

/**
 * Radially symmetric smoothing kernel W(r, h) = alpha_d * P(r / h) for r <= kappa * h.
 *
 * The normalization alpha_d carries the h^-dim factor. Wendland families use the closed-form
 * constants. The Laguerre-Gauss constant is integrated numerically over the truncated support
 * at construction so that the kernel integrates to one; the published closed-form value is
 * available through reference_alpha() for comparison.
 */
class Kernel
{
  public:
    Kernel(KernelFamily family, double h, int dim);

    KernelFamily family() const { return family_; }
    double h() const { return h_; }
    int dim() const { return dim_; }
    double alpha() const { return alpha_; }
    double kappa() const { return kappa_; }
    double cutoff() const { return kappa_ * h_; }

    /// Closed-form constant as tabulated in the literature for this family and dimension.
    double reference_alpha() const;

    double value(double r) const
    {
        if (!(r >= 0.0))
            throw DomainError("kernel value requested at negative distance");
        const double q = r * inv_h_;
        return q > kappa_ ? 0.0 : alpha_ * shape(q);
    }

    /// Radial derivative dW/dr.
    double derivative(double r) const
    {
        if (!(r >= 0.0))
            throw DomainError("kernel derivative requested at negative distance");
        const double q = r * inv_h_;
        return q > kappa_ ? 0.0 : alpha_ * inv_h_ * shape_derivative(q);
    }

    /// Integral of W over its support ball, from radial quadrature. Differs from one only for
    /// the truncated Wendland kernel (the missing tail mass).
    double support_integral() const;

    /// Dimensionless profile P(q) and dP/dq without normalization or cut-off.
    double shape(double q) const
    {
        switch (family_)
        {
        case KernelFamily::WendlandStandard:
        case KernelFamily::WendlandTruncated:
        {
            const double a = 1.0 - 0.5 * q;
            const double a2 = a * a;
            return a2 * a2 * (2.0 * q + 1.0);
        }
        case KernelFamily::LaguerreGauss:
        {
            const double q2 = q * q;
            return (1.0 - q2 + q2 * q2 / 6.0) * std::exp(-q2);
        }
        }
        return 0.0;
    }

    double shape_derivative(double q) const
    {
        switch (family_)
        {
        case KernelFamily::WendlandStandard:
        case KernelFamily::WendlandTruncated:
        {
            const double a = 1.0 - 0.5 * q;
            return -5.0 * q * a * a * a;
        }
        case KernelFamily::LaguerreGauss:
        {
            const double q2 = q * q;
            return q * (-4.0 + 8.0 * q2 / 3.0 - q2 * q2 / 3.0) * std::exp(-q2);
        }
        }
        return 0.0;
    }

  private:
    KernelFamily family_;
    double h_;
    double inv_h_;
    int dim_;
    double kappa_;
    double alpha_;
};

/// Surface measure factor of the unit sphere in dim dimensions (2, 2*pi, 4*pi).
double unit_sphere_measure(int dim);
} // namespace sphtrunc
