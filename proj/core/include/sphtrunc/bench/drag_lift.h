#pragma once

#include "sphtrunc/types.h"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sphtrunc::bench
{
struct ForceSample
{
    EIGEN_MAKE_ALIGNED_OPERATOR_NEW
    double time = 0.0;
    Vec2 force = Vec2::Zero(); ///< (drag, lift) exerted by the fluid on the body
};

/// C = 2 F / (rho u^2 A).
double force_coefficient(double force, double rho, double u, double area);

struct DragLiftResult
{
    std::vector<double> time;
    std::vector<double> cd;
    std::vector<double> cl;
    std::optional<double> mean_cd;  ///< over the samples after the transient
    std::optional<double> strouhal; ///< f D / u from the C_L peak spacing
    std::size_t peaks = 0;
    std::string note; ///< why St is unavailable, empty otherwise
};

/**
 * Coefficient series and Strouhal number. Samples before t_transient are excluded from the mean
 * and from peak detection. Each positive C_L lobe bounded by negative values on both sides gives
 * one peak at its maximum; St needs two such peaks (one full shedding period) and is left
 * unavailable with a note otherwise.
 */
DragLiftResult drag_lift(std::span<const ForceSample> history, double rho, double u, double area, double length,
                         double t_transient = 0.0);
} // namespace sphtrunc::bench
