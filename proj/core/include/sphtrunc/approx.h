#pragma once

#include "sphtrunc/correction.h"
#include "sphtrunc/kernel.h"
#include "sphtrunc/neighbor.h"
#include "sphtrunc/relaxation.h"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sphtrunc
{
/// W(0) V_i + sum_j W_ij V_j.
template <int Dim>
double sph_unity_sum(std::size_t i, const NeighborList<Dim> &neighbors, const Kernel &kernel,
                     std::span<const double> volumes);

/// Conservative weak-form gradient 2 sum_j (f_i + f_j)/2 grad W_ij V_j with e_ij = (x_i - x_j)/r.
/// With a correction field the kernel gradient is replaced by ((B_i + B_j)/2) grad W_ij.
template <int Dim>
Vec<Dim> weak_gradient(std::size_t i, std::span<const double> field, const NeighborList<Dim> &neighbors,
                       const Kernel &kernel, std::span<const double> volumes,
                       const CorrectionField<Dim> *correction = nullptr);

/// ||numerical - analytical||_2 / ||analytical||_2. Throws DomainError if the reference is zero.
double l2_error(std::span<const double> numerical, std::span<const double> analytical);

/// Test function of the error study and its x-derivative.
double exp_test_function(double x);
double exp_test_derivative(double x);

enum class Distribution
{
    Lattice,
    RelaxedWendland,
    RelaxedLaguerreGauss
};

std::string_view to_string(Distribution distribution);
Distribution parse_distribution(std::string_view text);

/// Setup of the circle study: diameter 2 centred at the origin, h = h_ratio dp.
struct StudySettings
{
    double diameter = 2.0;
    double h_ratio = 1.3;
    RelaxationConfig relaxation{}; ///< shape, dp and kernel are overwritten per run
    CorrectionSettings correction{};
};

/// Particle set of one study resolution (dp = diameter / divisions).
struct StudyDistribution
{
    Distribution kind = Distribution::Lattice;
    int divisions = 10;
    double dp = 0.2;
    PointArray<2> positions;
    std::vector<double> residual_history; ///< empty for the lattice
};

StudyDistribution make_study_distribution(Distribution kind, int divisions, const StudySettings &settings = {});

struct StudyErrors
{
    double gradient_l2 = 0.0; ///< relative L2 of the weak df/dx
    double unity_l2 = 0.0;    ///< RMS of (unity sum - 1)
    std::size_t evaluated = 0; ///< particles inside the error mask
    std::size_t regularized = 0;
};

/// Errors over the particles whose standard (2h) support lies inside the circle. The same mask
/// is used for every kernel so truncated and standard results cover one particle set.
StudyErrors evaluate_study(const StudyDistribution &distribution, KernelFamily family, bool correction,
                           const StudySettings &settings = {});

struct StudyRow
{
    Distribution distribution;
    KernelFamily kernel;
    bool correction;
    int divisions;
    double dp;
    double gradient_l2;
    double unity_l2;
    double observed_order; ///< log2(E(2 dp) / E(dp)); NaN for the coarsest resolution
};

std::vector<StudyRow> convergence_study(Distribution distribution, KernelFamily family, bool correction,
                                        const std::vector<int> &divisions, const StudySettings &settings = {});

/// Every (kernel, correction) combination on one distribution, relaxing each resolution once.
std::vector<StudyRow> full_study(Distribution distribution, const std::vector<int> &divisions,
                                 const StudySettings &settings = {});

/// Two-sided fit of log(E) against log(h); returns the slope.
double fitted_order(std::span<const double> h, std::span<const double> errors);

struct SmoothingOrderResult
{
    std::vector<double> h;
    std::vector<double> errors;
    double exponent = 0.0;
};

/**
 * Continuum smoothing error |<f> - f(x0)| of the kernel approximation in 2D, evaluated by a
 * Shepard-normalized midpoint quadrature at spacing h / points_per_h so that integration error is
 * negligible. f defaults to the study function, x0 to the origin.
 */
SmoothingOrderResult smoothing_order_check(KernelFamily family, const std::vector<double> &h_list,
                                           const std::function<double(const Vec2 &)> &f = {},
                                           const Vec2 &x0 = Vec2::Zero(), int points_per_h = 50);
} // namespace sphtrunc
