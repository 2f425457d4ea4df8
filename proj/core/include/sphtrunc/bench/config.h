#pragma once

#include "sphtrunc/approx.h"
#include "sphtrunc/kernel.h"
#include "sphtrunc/relaxation.h"
#include "sphtrunc/tlsph.h"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sphtrunc::bench
{
enum class CaseKind
{
    ShearLayer,
    Cavity,
    SemicircleCavity,
    DoubleMachReflection,
    Cylinder,
    BendingColumn,
    TwistingColumn
};

std::string_view to_string(CaseKind kind);
CaseKind parse_case_kind(std::string_view text);

enum class SolverSelection
{
    EulerHllc,
    EulerWc,
    Tlsph
};

std::string_view to_string(SolverSelection solver);
SolverSelection parse_solver(std::string_view text);

/**
 * One benchmark case, read from a flat INI file:
 *
 *   [case]     name, kind, dp or resolution (dp = 1 / resolution), kernel, correction, solver,
 *              t_end, max_steps, seed, workers, jitter, clamp
 *   [physics]  re, u_max, gamma, cfl, eta, h_ratio, init_velocity
 *   [material] rho0, E (or youngs), nu (or poisson), damping
 *   [boundaries] x_low, x_high, y_low, y_high (rectangle cases)
 *   [relaxation] steps, tolerance, step_scale
 *   [output]   every, vtk, trajectory_every
 *   [reference] u, v (paths relative to the config file)
 */
struct CaseConfig
{
    std::string name = "case";
    CaseKind kind = CaseKind::ShearLayer;
    double dp = 1.0 / 64.0;
    KernelFamily kernel = KernelFamily::WendlandStandard;
    bool correction = true;
    SolverSelection solver = SolverSelection::EulerWc;
    double t_end = 1.0;
    std::size_t max_steps = 0; ///< 0: run to t_end
    std::uint64_t seed = 0;
    int workers = 1;
    double jitter = 0.0; ///< uniform random offset of initial positions, fraction of dp, drawn from seed

    double reynolds = 0.0; ///< 0: inviscid
    double u_max = 1.0;
    double gamma = 1.4;
    double cfl = -1.0;     ///< negative: solver default
    double eta = -1.0;     ///< negative: solver default limiter parameter
    double h_ratio = -1.0; ///< negative: 1.3 for fluids, 1.15 for solids

    Material material{};
    double damping = 0.0;
    int clamp_layers = -1;      ///< negative: ceil(cutoff / dp) layers below the base
    double init_velocity = -1.0; ///< negative: 10 m/s bend speed or 105 rad/s twist rate

    std::map<std::string, std::string> boundaries;
    RelaxationConfig relaxation{};

    std::size_t output_every = 0; ///< steps between snapshots; 0 writes the final state only
    bool vtk = false;
    double trajectory_every = 0.0; ///< time between trajectory samples; 0 samples every step

    std::filesystem::path reference_u;
    std::filesystem::path reference_v;

    double resolved_h_ratio() const;
    bool fluid() const { return solver != SolverSelection::Tlsph; }
    void validate() const;
};

/// Parses INI text; relative reference paths are resolved against base_dir.
CaseConfig parse_case_config(const std::string &text, const std::filesystem::path &base_dir = {});
CaseConfig load_case_config(const std::filesystem::path &path);

/// Error-study description:
///   [study] distribution (lattice | relaxed-wendland | relaxed-lg | all), divisions (comma list),
///           diameter, h_ratio
///   [relaxation] steps, tolerance, step_scale
struct StudyConfig
{
    std::vector<Distribution> distributions{Distribution::Lattice, Distribution::RelaxedWendland,
                                            Distribution::RelaxedLaguerreGauss};
    std::vector<int> divisions{10, 20, 40};
    StudySettings settings{};
};

StudyConfig parse_study_config(const std::string &text);
StudyConfig load_study_config(const std::filesystem::path &path);
} // namespace sphtrunc::bench
