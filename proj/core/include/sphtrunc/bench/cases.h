#pragma once

#include "sphtrunc/bench/config.h"
#include "sphtrunc/bench/drag_lift.h"
#include "sphtrunc/bench/output.h"
#include "sphtrunc/bench/report.h"
#include "sphtrunc/eulerian/fluid.h"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sphtrunc::bench
{
struct RunOptions
{
    std::filesystem::path out_dir; ///< empty: nothing is written
    std::function<void(const std::string &)> log; ///< progress lines, optional
};

/// Field sampled along a line; reference holds the tabulated values at the same coordinates.
struct ProfileResult
{
    std::string name;
    std::vector<double> coordinate;
    std::vector<double> value;
    std::vector<double> reference; ///< empty without a reference file
};

struct CaseResult
{
    RunReport report;
    std::optional<FluidSnapshot> fluid; ///< final state of the real particles
    std::optional<SolidSnapshot> solid;
    std::vector<TrajectorySample> trajectory; ///< tip position after every step, t = 0 first
    std::vector<ProfileResult> profiles;
    std::vector<ForceSample> forces;
};

/**
 * Builds the case, runs the solver to t_end (or max_steps) and computes the case metrics.
 *
 * Wall-clock time covers the step loop only. Snapshots go to out_dir every output_every steps
 * plus the final state, together with report.json and case-specific CSVs. A SolverError
 * raised inside the loop is rethrown after the partial outputs and an "aborted" report are
 * written.
 */
CaseResult run_case(const CaseConfig &config, const RunOptions &options = {});

/// Vorticity dv/dx - du/dy from the corrected strong-form gradient
/// sum_j (v_j - v_i) (x) (B_i grad W_ij) V_j over the listed neighbors (ghosts included).
std::vector<double> vorticity_field(const EulerianSolver<2> &solver);

/// Relaxed body-fitted fill of the case domain (semicircle cavity only).
RelaxationResult<2> relax_case(const CaseConfig &config);

/// Fluid viscosity mu = rho u_max L / Re for the case length scale; zero when Re = 0.
double case_viscosity(const CaseConfig &config);
} // namespace sphtrunc::bench
