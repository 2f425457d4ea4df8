#pragma once

#include "sphtrunc/kernel.h"
#include "sphtrunc/types.h"

#include <filesystem>
#include <span>
#include <vector>

namespace sphtrunc::bench
{
/// Tabulated profile along a sample line: coordinate along the line and the field value.
struct ReferenceProfile
{
    std::vector<double> coordinate;
    std::vector<double> value;
    std::vector<std::string> header; ///< leading '#' lines (source notes)
};

/// Two-column CSV; '#' lines are kept as header, a non-numeric first row is taken as column names.
/// Throws ConfigError if the file is missing or malformed.
ReferenceProfile load_reference_profile(const std::filesystem::path &path);

/// Shepard-normalized SPH interpolation sum_j f_j W(x - x_j) V_j / sum_j W(x - x_j) V_j at each
/// sample point. Samples without any neighbor get NaN.
std::vector<double> sph_interpolate(const Kernel &kernel, const PointArray<2> &positions,
                                    std::span<const double> volumes, std::span<const double> field,
                                    const PointArray<2> &samples);

struct ProfileMetrics
{
    double l2 = 0.0;   ///< root mean square difference
    double linf = 0.0; ///< largest absolute difference
    std::size_t points = 0;
};

/// Pointwise comparison of equally long profiles. Throws InputError on length mismatch or empty input.
ProfileMetrics compare_profiles(std::span<const double> values, std::span<const double> reference);

/// Linear interpolation of (x, y) data at xq; clamps outside the data range.
double interpolate_linear(std::span<const double> x, std::span<const double> y, double xq);
} // namespace sphtrunc::bench
